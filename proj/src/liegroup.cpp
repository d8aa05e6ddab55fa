#include "ym/liegroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ym/linalg.hpp"

namespace ym {

namespace {

constexpr double kPi = 3.14159265358979323846;

CMat cm(std::initializer_list<std::initializer_list<Complex>> rows) {
  const int n = static_cast<int>(rows.size());
  CMat m(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

const Complex kI(0.0, 1.0);

// sin(t)/t and (1-cos(t))/t^2, series-stabilized near zero.
double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

double cosc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  }
  return (1.0 - std::cos(t)) / (t * t);
}

}  // namespace

int GroupSpec::algebra_dim() const {
  switch (family) {
    case Family::SU2: return 3;
    case Family::SO3: return 3;
    case Family::U2: return 4;
    case Family::O2: return 1;
    case Family::O3: return 3;
    case Family::Torus: return torus_rank;
  }
  throw UnsupportedGroupError("unknown family");
}

int GroupSpec::matrix_size() const {
  switch (family) {
    case Family::SU2: return 2;
    case Family::SO3: return 3;
    case Family::U2: return 2;
    case Family::O2: return 2;
    case Family::O3: return 3;
    case Family::Torus: return torus_rank;
  }
  throw UnsupportedGroupError("unknown family");
}

bool GroupSpec::is_real() const {
  return family == Family::SO3 || family == Family::O2 ||
         family == Family::O3;
}

bool GroupSpec::is_connected() const {
  return family != Family::O2 && family != Family::O3;
}

bool GroupSpec::is_abelian() const { return family == Family::Torus; }

int GroupSpec::centre_dim() const {
  switch (family) {
    case Family::SU2: return 0;   // {+-I}
    case Family::SO3: return 0;   // {I}
    case Family::U2: return 1;    // S^1 . I
    case Family::O2: return 0;    // {+-I}
    case Family::O3: return 0;    // {+-I}
    case Family::Torus: return torus_rank;
  }
  throw UnsupportedGroupError("unknown family");
}

std::string GroupSpec::name() const {
  switch (family) {
    case Family::SU2: return "SU2";
    case Family::SO3: return "SO3";
    case Family::U2: return "U2";
    case Family::O2: return "O2";
    case Family::O3: return "O3";
    case Family::Torus: return "T" + std::to_string(torus_rank);
  }
  throw UnsupportedGroupError("unknown family");
}

GroupSpec GroupSpec::parse(const std::string& name) {
  if (name == "SU2") return {Family::SU2, 1};
  if (name == "SO3") return {Family::SO3, 1};
  if (name == "U2") return {Family::U2, 1};
  if (name == "O2") return {Family::O2, 1};
  if (name == "O3") return {Family::O3, 1};
  if (name.size() >= 2 && name[0] == 'T') {
    const int k = std::atoi(name.c_str() + 1);
    if (k >= 1) return {Family::Torus, k};
  }
  throw UnsupportedGroupError("unknown group name: " + name);
}

const std::vector<CMat>& algebra_basis(const GroupSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<CMat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(static_cast<int>(spec.family),
                                  spec.torus_rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const double s2 = std::sqrt(2.0);
  std::vector<CMat> basis;
  switch (spec.family) {
    case Family::SU2:
    case Family::U2: {
      basis.push_back(cm({{0, kI}, {kI, 0}}) / s2);           // i sigma_1
      basis.push_back(cm({{0, 1}, {-1, 0}}) / s2);            // i sigma_2
      basis.push_back(cm({{kI, 0}, {0, -kI}}) / s2);          // i sigma_3
      if (spec.family == Family::U2)
        basis.push_back(cm({{kI, 0}, {0, kI}}) / s2);         // i I
      break;
    }
    case Family::SO3:
    case Family::O3: {
      basis.push_back(cm({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}) / s2);  // L_1
      basis.push_back(cm({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}) / s2);  // L_2
      basis.push_back(cm({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}) / s2);  // L_3
      break;
    }
    case Family::O2: {
      basis.push_back(cm({{0, -1}, {1, 0}}) / s2);
      break;
    }
    case Family::Torus: {
      for (int j = 0; j < spec.torus_rank; ++j) {
        CMat e = CMat::Zero(spec.torus_rank, spec.torus_rank);
        e(j, j) = kI;
        basis.push_back(e);
      }
      break;
    }
  }
  return cache.emplace(key, std::move(basis)).first->second;
}

double inner_product(const CMat& x, const CMat& y, const InnerProduct& ip) {
  return -ip.scale * (x * y).trace().real();
}

RVec algebra_coords(const GroupSpec& spec, const CMat& x) {
  const auto& basis = algebra_basis(spec);
  RVec c(static_cast<int>(basis.size()));
  for (int i = 0; i < c.size(); ++i) c[i] = inner_product(basis[i], x);
  return c;
}

CMat algebra_from_coords(const GroupSpec& spec, const RVec& coords) {
  const auto& basis = algebra_basis(spec);
  CMat x = CMat::Zero(spec.matrix_size(), spec.matrix_size());
  for (int i = 0; i < coords.size(); ++i) x += coords[i] * basis[i];
  return x;
}

GroupElement identity(const GroupSpec& spec) {
  return {spec, CMat::Identity(spec.matrix_size(), spec.matrix_size())};
}

GroupElement minus_identity(const GroupSpec& spec) {
  if (spec.family == Family::SO3)
    throw UnsupportedGroupError("-I does not lie in SO3");
  return {spec, -CMat::Identity(spec.matrix_size(), spec.matrix_size())};
}

bool is_in_group(const GroupSpec& spec, const CMat& m, double tau) {
  const int n = spec.matrix_size();
  if (m.rows() != n || m.cols() != n) return false;
  if (spec.is_real() && m.imag().norm() > tau) return false;
  if ((m.adjoint() * m - CMat::Identity(n, n)).norm() > tau) return false;
  const Complex det = m.determinant();
  switch (spec.family) {
    case Family::SU2:
    case Family::SO3:
      return std::abs(det - 1.0) <= tau;
    case Family::U2:
      return std::abs(std::abs(det) - 1.0) <= tau;
    case Family::O2:
    case Family::O3:
      return std::min(std::abs(det - 1.0), std::abs(det + 1.0)) <= tau;
    case Family::Torus: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && std::abs(m(i, j)) > tau) return false;
      return true;
    }
  }
  return false;
}

bool is_in_algebra(const GroupSpec& spec, const CMat& m, double tau) {
  const int n = spec.matrix_size();
  if (m.rows() != n || m.cols() != n) return false;
  if (spec.is_real() && m.imag().norm() > tau) return false;
  if ((m + m.adjoint()).norm() > tau) return false;  // skew-hermitian
  switch (spec.family) {
    case Family::SU2:
      return std::abs(m.trace()) <= tau;
    case Family::SO3:
    case Family::O2:
    case Family::O3:
    case Family::U2:
      return true;
    case Family::Torus: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && std::abs(m(i, j)) > tau) return false;
      return true;
    }
  }
  return false;
}

void check_group_element(const GroupElement& g, double tau) {
  if (!is_in_group(g.spec, g.m, tau))
    throw ValidationError("matrix is not an element of " + g.spec.name());
}

void check_algebra_element(const AlgebraElement& x, double tau) {
  if (!is_in_algebra(x.spec, x.m, tau))
    throw ValidationError("matrix does not lie in the Lie algebra of " +
                          x.spec.name());
}

// ---------------------------------------------------------------------------
// exp / log

namespace {

CMat exp_su2(const CMat& x) {
  // X^2 = -theta^2 I on su(2)
  const double theta2 = std::max(0.0, -(x * x).trace().real() / 2.0);
  const double theta = std::sqrt(theta2);
  return std::cos(theta) * CMat::Identity(2, 2) + sinc(theta) * x;
}

Eigen::Matrix3d exp_so3(const Eigen::Matrix3d& x) {
  const double theta = std::sqrt(std::max(0.0, -(x * x).trace() / 2.0));
  return Eigen::Matrix3d::Identity() + sinc(theta) * x +
         cosc(theta) * (x * x);
}

CMat log_su2(const CMat& g) {
  if ((g + CMat::Identity(2, 2)).norm() <= tol::branch)
    throw BranchCutError("log is ambiguous at -I in SU2");
  const double c = std::min(1.0, std::max(-1.0, g.trace().real() / 2.0));
  CMat s = (g - g.adjoint()) / 2.0;
  const double sn = s.norm() / std::sqrt(2.0);
  const double theta = std::atan2(sn, c);
  if (sn < 1e-300) return CMat::Zero(2, 2);
  return s * (theta / sn);
}

Eigen::Matrix3d log_so3(const Eigen::Matrix3d& g) {
  const double c =
      std::min(1.0, std::max(-1.0, (g.trace() - 1.0) / 2.0));
  const double theta = std::acos(c);
  if (kPi - theta <= tol::branch)
    throw BranchCutError("log is ambiguous near half-turns in SO3");
  Eigen::Matrix3d s = (g - g.transpose()) / 2.0;
  const double sn = s.norm() / std::sqrt(2.0);  // |sin theta|
  if (sn < 1e-300) return Eigen::Matrix3d::Zero();
  if (c < -0.5) {
    // Near the branch the axis comes out of the symmetric part, which stays
    // well conditioned; the skew part only decides the sign.
    Eigen::Matrix3d p = (g + g.transpose()) / 2.0 -
                        c * Eigen::Matrix3d::Identity();
    p /= (1.0 - c);  // now p = n n^T
    int k = 0;
    p.diagonal().maxCoeff(&k);
    Eigen::Vector3d n = p.col(k) / std::sqrt(p(k, k));
    Eigen::Vector3d axis_from_skew(s(2, 1), s(0, 2), s(1, 0));
    if (n.dot(axis_from_skew) < 0) n = -n;
    Eigen::Matrix3d l;
    l << 0, -n[2], n[1], n[2], 0, -n[0], -n[1], n[0], 0;
    return theta * l;
  }
  return s * (theta / sn);
}

// Principal log of a normal unitary matrix through a Schur decomposition.
CMat log_unitary_schur(const CMat& g) {
  const int n = static_cast<int>(g.rows());
  Eigen::ComplexSchur<CMat> schur(g);
  const CMat& t = schur.matrixT();
  const CMat& u = schur.matrixU();
  CMat d = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Complex lambda = t(i, i);
    if (std::abs(lambda + 1.0) <= tol::branch)
      throw BranchCutError("eigenvalue within branch tolerance of -1");
    d(i, i) = Complex(0.0, std::arg(lambda));
  }
  return u * d * u.adjoint();
}

}  // namespace

GroupElement exp(const AlgebraElement& x) {
  const GroupSpec& spec = x.spec;
  switch (spec.family) {
    case Family::SU2:
      return {spec, exp_su2(x.m)};
    case Family::U2: {
      // X = i alpha I + X0 with X0 traceless; the summands commute.
      const Complex ia = x.m.trace() / 2.0;
      const CMat x0 = x.m - ia * CMat::Identity(2, 2);
      return {spec, std::exp(ia) * exp_su2(x0)};
    }
    case Family::SO3:
    case Family::O3: {
      Eigen::Matrix3d r = exp_so3(x.m.real());
      return {spec, r.cast<Complex>()};
    }
    case Family::O2: {
      const double t = x.m(1, 0).real();
      Eigen::Matrix2d r;
      r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      return {spec, r.cast<Complex>()};
    }
    case Family::Torus: {
      const int n = spec.matrix_size();
      CMat g = CMat::Zero(n, n);
      for (int i = 0; i < n; ++i) g(i, i) = std::exp(x.m(i, i));
      return {spec, g};
    }
  }
  throw UnsupportedGroupError("exp: unknown family");
}

AlgebraElement log(const GroupElement& g) {
  const GroupSpec& spec = g.spec;
  switch (spec.family) {
    case Family::SU2:
      return {spec, log_su2(g.m)};
    case Family::U2:
    case Family::Torus:
      return {spec, log_unitary_schur(g.m)};
    case Family::SO3:
      return {spec, log_so3(g.m.real()).cast<Complex>()};
    case Family::O3: {
      if (g.m.real().determinant() < 0)
        throw BranchCutError("no logarithm on the det = -1 component of O3");
      return {spec, log_so3(g.m.real()).cast<Complex>()};
    }
    case Family::O2: {
      if (g.m.real().determinant() < 0)
        throw BranchCutError("no logarithm on the reflection component of O2");
      const double t = std::atan2(g.m(1, 0).real(), g.m(0, 0).real());
      if (kPi - std::abs(t) <= tol::branch)
        throw BranchCutError("log is ambiguous at the half-turn in SO2");
      CMat x = cm({{0, -t}, {t, 0}});
      return {spec, x};
    }
  }
  throw UnsupportedGroupError("log: unknown family");
}

RMat adjoint_operator(const GroupElement& g) {
  const auto& basis = algebra_basis(g.spec);
  const int d = static_cast<int>(basis.size());
  if (g.spec.family == Family::Torus) return RMat::Identity(d, d);
  RMat a(d, d);
  const CMat ginv = g.m.adjoint();
  for (int j = 0; j < d; ++j) {
    const CMat col = g.m * basis[j] * ginv;
    for (int i = 0; i < d; ++i) a(i, j) = inner_product(basis[i], col);
  }
  return a;
}

RMat ad_operator(const AlgebraElement& x) {
  const auto& basis = algebra_basis(x.spec);
  const int d = static_cast<int>(basis.size());
  RMat a(d, d);
  for (int j = 0; j < d; ++j) {
    const CMat col = x.m * basis[j] - basis[j] * x.m;
    for (int i = 0; i < d; ++i) a(i, j) = inner_product(basis[i], col);
  }
  return a;
}

RMat centralizer_algebra_coords(const std::vector<GroupElement>& elements) {
  if (elements.empty())
    throw ValidationError("centralizer_algebra needs at least one element");
  const GroupSpec spec = elements.front().spec;
  for (const auto& g : elements)
    if (g.spec != spec)
      throw ValidationError("centralizer_algebra: mixed group specs");
  const int d = spec.algebra_dim();
  RMat stacked(static_cast<int>(elements.size()) * d, d);
  for (int i = 0; i < static_cast<int>(elements.size()); ++i)
    stacked.middleRows(i * d, d) =
        adjoint_operator(elements[i]) - RMat::Identity(d, d);
  return kernel_basis(stacked, tol::rank);
}

std::vector<AlgebraElement> centralizer_algebra(
    const std::vector<GroupElement>& elements) {
  const GroupSpec spec = elements.front().spec;
  const RMat k = centralizer_algebra_coords(elements);
  std::vector<AlgebraElement> out;
  for (int j = 0; j < k.cols(); ++j)
    out.push_back({spec, algebra_from_coords(spec, k.col(j))});
  return out;
}

// ---------------------------------------------------------------------------
// Centralizer classification

namespace {

bool commutes_with_all(const CMat& z, const std::vector<CMat>& hs,
                       double tau) {
  for (const auto& h : hs)
    if ((z * h - h * z).norm() > tau) return false;
  return true;
}

Eigen::Matrix3d half_turn(const Eigen::Vector3d& axis) {
  const Eigen::Vector3d n = axis.normalized();
  return 2.0 * n * n.transpose() - Eigen::Matrix3d::Identity();
}

// Two deterministic unit vectors orthogonal to a.
std::pair<Eigen::Vector3d, Eigen::Vector3d> orthogonal_frame(
    const Eigen::Vector3d& a) {
  const Eigen::Vector3d n = a.normalized();
  int k = 0;
  n.cwiseAbs().minCoeff(&k);
  Eigen::Vector3d b1 = n.cross(Eigen::Vector3d::Unit(k)).normalized();
  Eigen::Vector3d b2 = n.cross(b1).normalized();
  return {b1, b2};
}

// All lines spanned by simultaneous (+-1)-eigenvectors of the given
// rotations, found by intersecting eigenspaces over sign patterns.
std::vector<Eigen::Vector3d> common_sign_axes(
    const std::vector<Eigen::Matrix3d>& rs) {
  std::vector<Eigen::MatrixXd> spaces = {Eigen::MatrixXd::Identity(3, 3)};
  for (const auto& r : rs) {
    std::vector<Eigen::MatrixXd> next;
    for (const auto& b : spaces) {
      for (const double eps : {1.0, -1.0}) {
        const Eigen::MatrixXd m =
            (r - eps * Eigen::Matrix3d::Identity()) * b;
        const Eigen::MatrixXd k = kernel_basis(m, 1e-7);
        if (k.cols() > 0) next.push_back(b * k);
      }
    }
    spaces = std::move(next);
    if (spaces.empty()) break;
  }
  std::vector<Eigen::Vector3d> axes;
  for (const auto& b : spaces) {
    if (b.cols() > 1)
      throw UnsupportedGroupError(
          "common eigenspace of dimension " + std::to_string(b.cols()) +
          " in the zero-dimensional centralizer branch");
    Eigen::Vector3d a = b.col(0).normalized();
    bool dup = false;
    for (const auto& prev : axes)
      if (std::abs(prev.dot(a)) > 1.0 - 1e-8) dup = true;
    if (!dup) axes.push_back(a);
  }
  return axes;
}

Stabilizer classify_su2(const GroupSpec& spec, const RMat& algebra) {
  Stabilizer st;
  st.algebra = algebra;
  const int d = static_cast<int>(algebra.cols());
  st.components.push_back(identity(spec));
  if (d == 3) {
    st.label = {spec.family, 1, "(SU2)", 3, 1};
  } else if (d == 1) {
    st.label = {spec.family, 1, "(T)", 1, 1};
  } else if (d == 0) {
    st.components.push_back(minus_identity(spec));
    st.label = {spec.family, 1, "(Z)", 0, 2};
  } else {
    throw UnsupportedGroupError("SU2 centralizer of dimension " +
                                std::to_string(d));
  }
  return st;
}

Stabilizer classify_so3(const GroupSpec& spec, const RMat& algebra,
                        const std::vector<GroupElement>& elements) {
  Stabilizer st;
  st.algebra = algebra;
  st.components.push_back(identity(spec));
  std::vector<CMat> hs;
  for (const auto& g : elements) hs.push_back(g.m);
  const int d = static_cast<int>(algebra.cols());

  if (d == 3) {
    st.label = {spec.family, 1, "(SO3)", 3, 1};
    return st;
  }
  if (d == 1) {
    // In the so(3) basis the coordinate vector of the fixed direction is the
    // common rotation axis itself.
    Eigen::Vector3d axis = algebra.col(0).normalized();
    auto [b1, b2] = orthogonal_frame(axis);
    const CMat cand = half_turn(b1).cast<Complex>();
    const CMat cand2 = half_turn(b2).cast<Complex>();
    const bool flip1 = commutes_with_all(cand, hs, tol::group);
    const bool flip2 = commutes_with_all(cand2, hs, tol::group);
    if (flip1 != flip2)
      throw UnsupportedGroupError(
          "inconsistent axis-reversing half-turn tests in SO3");
    if (flip1) {
      st.components.push_back({spec, cand});
      st.label = {spec.family, 1, "(O2)", 1, 2};
    } else {
      st.label = {spec.family, 1, "(SO2)", 1, 1};
    }
    return st;
  }
  if (d == 0) {
    std::vector<Eigen::Matrix3d> nontrivial;
    for (const auto& h : hs) {
      Eigen::Matrix3d r = h.real();
      if ((r - Eigen::Matrix3d::Identity()).norm() > 1e-8)
        nontrivial.push_back(r);
    }
    std::vector<Eigen::Vector3d> valid;
    for (const auto& a : common_sign_axes(nontrivial)) {
      if (commutes_with_all(half_turn(a).cast<Complex>(), hs, tol::group))
        valid.push_back(a);
    }
    if (valid.size() == 2 &&
        std::abs(valid[0].dot(valid[1])) < 1e-8) {
      const Eigen::Vector3d c = valid[0].cross(valid[1]).normalized();
      if (commutes_with_all(half_turn(c).cast<Complex>(), hs, tol::group))
        valid.push_back(c);
    }
    if (valid.size() == 0) {
      st.label = {spec.family, 1, "(e)", 0, 1};
    } else if (valid.size() == 1) {
      st.components.push_back({spec, half_turn(valid[0]).cast<Complex>()});
      st.label = {spec.family, 1, "(Z2)", 0, 2};
    } else if (valid.size() == 3) {
      for (const auto& a : valid)
        st.components.push_back({spec, half_turn(a).cast<Complex>()});
      st.label = {spec.family, 1, "(V)", 0, 4};
    } else {
      throw UnsupportedGroupError(
          std::to_string(valid.size()) +
          " commuting half-turns found in SO3; expected 0, 1 or 3");
    }
    return st;
  }
  throw UnsupportedGroupError("SO3 centralizer of dimension " +
                              std::to_string(d));
}

Stabilizer classify_u2(const GroupSpec& spec, const RMat& algebra) {
  Stabilizer st;
  st.algebra = algebra;
  st.components.push_back(identity(spec));
  switch (algebra.cols()) {
    case 4: st.label = {spec.family, 1, "(U2)", 4, 1}; return st;
    case 2: st.label = {spec.family, 1, "(T2)", 2, 1}; return st;
    case 1: st.label = {spec.family, 1, "(S1)", 1, 1}; return st;
  }
  throw UnsupportedGroupError("U2 centralizer of dimension " +
                              std::to_string(algebra.cols()));
}

CMat o2_reflection(double axis_angle) {
  const double c = std::cos(2 * axis_angle), s = std::sin(2 * axis_angle);
  return cm({{c, s}, {s, -c}});
}

Stabilizer classify_o2(const GroupSpec& spec, const RMat& algebra,
                       const std::vector<GroupElement>& elements) {
  Stabilizer st;
  st.algebra = algebra;
  st.components.push_back(identity(spec));
  std::vector<CMat> hs;
  for (const auto& g : elements) hs.push_back(g.m);

  bool rotations_central = true;  // all rotation holonomies in {+-I}
  std::vector<double> reflection_angles;  // doubled axis angles
  for (const auto& h : hs) {
    const Eigen::Matrix2d r = h.real();
    if (r.determinant() > 0) {
      if ((r - Eigen::Matrix2d::Identity()).norm() > 1e-8 &&
          (r + Eigen::Matrix2d::Identity()).norm() > 1e-8)
        rotations_central = false;
    } else {
      reflection_angles.push_back(std::atan2(r(0, 1), r(0, 0)));
    }
  }

  if (algebra.cols() == 1) {
    // No reflections among the elements.
    if (rotations_central) {
      st.components.push_back({spec, o2_reflection(0.0)});
      st.label = {spec.family, 1, "(O2)", 1, 2};
    } else {
      st.label = {spec.family, 1, "(SO2)", 1, 1};
    }
    return st;
  }
  if (algebra.cols() == 0) {
    bool axes_compatible = true;
    for (std::size_t i = 1; i < reflection_angles.size(); ++i) {
      const double delta = reflection_angles[i] - reflection_angles[0];
      // Compatible axes are equal or perpendicular: doubled angles differ
      // by a multiple of pi.
      if (std::abs(std::sin(delta)) > 1e-8) axes_compatible = false;
    }
    if (rotations_central && axes_compatible && !reflection_angles.empty()) {
      const double alpha = reflection_angles[0] / 2.0;
      const CMat r1 = o2_reflection(alpha);
      const CMat r2 = o2_reflection(alpha + kPi / 2.0);
      if (commutes_with_all(r1, hs, tol::group) &&
          commutes_with_all(r2, hs, tol::group)) {
        st.components.push_back(minus_identity(spec));
        st.components.push_back({spec, r1});
        st.components.push_back({spec, r2});
        st.label = {spec.family, 1, "(V)", 0, 4};
        return st;
      }
    }
    st.components.push_back(minus_identity(spec));
    st.label = {spec.family, 1, "(Z2)", 0, 2};
    return st;
  }
  throw UnsupportedGroupError("O2 centralizer of dimension " +
                              std::to_string(algebra.cols()));
}

Stabilizer classify_o3(const GroupSpec& spec, const RMat& algebra,
                       const std::vector<GroupElement>& elements) {
  // O3 = SO3 x {+-I}; centralizers are products, so classify the rotation
  // parts and adjoin the central -I.
  const GroupSpec so3{Family::SO3, 1};
  std::vector<GroupElement> rotations;
  for (const auto& g : elements) {
    Eigen::Matrix3d r = g.m.real();
    if (r.determinant() < 0) r = -r;
    rotations.push_back({so3, r.cast<Complex>()});
  }
  Stabilizer base = classify_so3(so3, algebra, rotations);
  Stabilizer st;
  st.algebra = algebra;
  for (const auto& c : base.components) st.components.push_back({spec, c.m});
  for (const auto& c : base.components) st.components.push_back({spec, -c.m});
  std::string sym = base.label.symbol;
  sym = sym.substr(1, sym.size() - 2);
  st.label = {spec.family, 1, "(" + sym + "xZ2)", base.label.identity_dim,
              base.label.components * 2};
  return st;
}

}  // namespace

Stabilizer classify_centralizer(const GroupSpec& spec,
                                const std::vector<GroupElement>& elements) {
  const RMat algebra = centralizer_algebra_coords(elements);
  switch (spec.family) {
    case Family::SU2: return classify_su2(spec, algebra);
    case Family::SO3: return classify_so3(spec, algebra, elements);
    case Family::U2: return classify_u2(spec, algebra);
    case Family::O2: return classify_o2(spec, algebra, elements);
    case Family::O3: return classify_o3(spec, algebra, elements);
    case Family::Torus: {
      Stabilizer st;
      st.algebra = algebra;
      st.components.push_back(identity(spec));
      st.label = {spec.family, spec.torus_rank,
                  "(T" + std::to_string(spec.torus_rank) + ")",
                  spec.torus_rank, 1};
      return st;
    }
  }
  throw UnsupportedGroupError("classify_centralizer: unknown family");
}

// ---------------------------------------------------------------------------
// Projection

GroupElement project_to_group(const CMat& m, const GroupSpec& spec) {
  const int n = spec.matrix_size();
  if (m.rows() != n || m.cols() != n)
    throw ValidationError("project_to_group: wrong matrix size");

  if (spec.family == Family::Torus) {
    double maxd = 0.0;
    for (int i = 0; i < n; ++i) maxd = std::max(maxd, std::abs(m(i, i)));
    CMat g = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(m(i, i));
      if (a <= tol::rank * std::max(maxd, 1e-300))
        throw SingularProjectionError(
            "vanishing diagonal entry in torus projection");
      g(i, i) = m(i, i) / a;
    }
    return {spec, g};
  }

  if (spec.is_real()) {
    const Eigen::MatrixXd mr = m.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        mr, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[n - 1] <= tol::rank * sv[0])
      throw SingularProjectionError("rank-deficient input to projection");
    Eigen::MatrixXd q = svd.matrixU() * svd.matrixV().transpose();
    if (spec.family == Family::SO3 && q.determinant() < 0) {
      Eigen::VectorXd flip = Eigen::VectorXd::Ones(n);
      flip[n - 1] = -1.0;
      q = svd.matrixU() * flip.asDiagonal() * svd.matrixV().transpose();
    }
    return {spec, q.cast<Complex>()};
  }

  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv[n - 1] <= tol::rank * sv[0])
    throw SingularProjectionError("rank-deficient input to projection");
  CMat u = svd.matrixU() * svd.matrixV().adjoint();
  if (spec.family == Family::SU2) {
    const Complex det = u.determinant();
    u *= std::exp(Complex(0.0, -std::arg(det) / 2.0));
  }
  return {spec, u};
}

bool is_central(const GroupSpec& spec, const CMat& m, double tau) {
  const int n = spec.matrix_size();
  switch (spec.family) {
    case Family::SU2:
    case Family::O2:
    case Family::O3:
      return (m - CMat::Identity(n, n)).norm() <= tau ||
             (m + CMat::Identity(n, n)).norm() <= tau;
    case Family::SO3:
      return (m - CMat::Identity(n, n)).norm() <= tau;
    case Family::U2: {
      const Complex lambda = m.trace() / 2.0;
      return std::abs(std::abs(lambda) - 1.0) <= tau &&
             (m - lambda * CMat::Identity(2, 2)).norm() <= tau;
    }
    case Family::Torus:
      return is_in_group(spec, m, tau);
  }
  return false;
}

std::string OrbitTypeLabel::to_string() const {
  GroupSpec s{family, torus_rank};
  return s.name() + ":" + symbol;
}

}  // namespace ym
