#include "hwarp/sl3.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "hwarp/error.hpp"

namespace hwarp {

namespace {

// Relative determinant threshold below which a matrix is treated as singular.
constexpr double kSingularTol = 1e-14;

bool is_singular(const Matrix3& m) {
  if (!m.allFinite()) return true;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return std::abs(m.determinant()) <= kSingularTol * scale * scale * scale;
}

void require_finite(const AlgebraCoeffs& b, const char* op) {
  if (!b.all_finite()) {
    throw InvalidArgument(std::string(op) + ": coefficients must be finite");
  }
}

Matrix3 unit_frobenius_sign_fixed(const Matrix3& m) {
  if (is_singular(m)) throw SingularMatrixError("projective_distance: singular matrix");
  Matrix3 out = m / m.norm();
  Eigen::Index r = 0, c = 0;
  out.cwiseAbs().maxCoeff(&r, &c);
  if (out(r, c) < 0.0) out = -out;
  return out;
}

}  // namespace

bool AlgebraCoeffs::all_finite() const {
  for (double v : b) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Homography::Homography(const Matrix3& m) {
  if (is_singular(m)) throw SingularMatrixError("homography is singular or non-finite");
  m_ = m / std::cbrt(m.determinant());
}

Homography Homography::inverse() const { return Homography(m_.inverse()); }

Homography Homography::operator*(const Homography& rhs) const {
  return Homography(m_ * rhs.m_);
}

Vector2 Homography::map(const Vector2& p) const {
  const Eigen::Vector3d q = m_ * Eigen::Vector3d(p.x(), p.y(), 1.0);
  if (q.z() == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return {q.x() / q.z(), q.y() / q.z()};
}

const std::array<Matrix3, 8>& generators() {
  static const std::array<Matrix3, 8> kGenerators = [] {
    std::array<Matrix3, 8> g;
    for (auto& m : g) m.setZero();
    g[0](0, 2) = 1.0;                     // A1: x translation
    g[1](1, 2) = 1.0;                     // A2: y translation
    g[2](0, 1) = -1.0; g[2](1, 0) = 1.0;  // A3: rotation
    g[3](2, 2) = -1.0;                    // A4: isotropic scale
    g[4](0, 0) = 1.0; g[4](1, 1) = -1.0;  // A5: aspect ratio
    g[5](0, 1) = 1.0;                     // A6: shear
    g[6](2, 0) = 1.0;                     // A7: perspective x
    g[7](2, 1) = 1.0;                     // A8: perspective y
    return g;
  }();
  return kGenerators;
}

Matrix3 algebra_element(const AlgebraCoeffs& b) {
  Matrix3 a = Matrix3::Zero();
  const auto& g = generators();
  for (std::size_t i = 0; i < 8; ++i) a += b[i] * g[i];
  return a;
}

Matrix3 expm(const Matrix3& a) {
  // Higham (2005), degree 13.
  static constexpr double kPade[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  static constexpr double kTheta13 = 5.371920351148152;

  if (!a.allFinite()) throw InvalidArgument("expm: non-finite matrix");

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Matrix3 s = a / std::ldexp(1.0, squarings);
  const Matrix3 id = Matrix3::Identity();
  const Matrix3 s2 = s * s;
  const Matrix3 s4 = s2 * s2;
  const Matrix3 s6 = s4 * s2;

  const Matrix3 u_inner = s6 * (kPade[13] * s6 + kPade[11] * s4 + kPade[9] * s2) +
                          kPade[7] * s6 + kPade[5] * s4 + kPade[3] * s2 + kPade[1] * id;
  const Matrix3 u = s * u_inner;
  const Matrix3 v = s6 * (kPade[12] * s6 + kPade[10] * s4 + kPade[8] * s2) +
                    kPade[6] * s6 + kPade[4] * s4 + kPade[2] * s2 + kPade[0] * id;

  Matrix3 r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

Homography exp_sl3(const AlgebraCoeffs& b) {
  require_finite(b, "exp_sl3");
  return Homography(expm(algebra_element(b)));
}

Matrix3 translation_factor(double b1, double b2) {
  Matrix3 m = Matrix3::Identity();
  m(0, 2) = b1;
  m(1, 2) = b2;
  return m;
}

Matrix3 similarity_factor(double b3, double b4) {
  const double s = std::exp(b4);
  const double c = std::cos(b3);
  const double sn = std::sin(b3);
  Matrix3 m = Matrix3::Identity();
  m(0, 0) = s * c;
  m(0, 1) = -s * sn;
  m(1, 0) = s * sn;
  m(1, 1) = s * c;
  return m;
}

Matrix3 aspect_factor(double b5) {
  Matrix3 m = Matrix3::Identity();
  m(0, 0) = std::exp(b5);
  m(1, 1) = std::exp(-b5);
  return m;
}

Matrix3 shear_factor(double b6) {
  Matrix3 m = Matrix3::Identity();
  m(0, 1) = b6;
  return m;
}

Matrix3 perspective1_factor(double b7) {
  Matrix3 m = Matrix3::Identity();
  m(2, 0) = b7;
  return m;
}

Matrix3 perspective2_factor(double b8) {
  Matrix3 m = Matrix3::Identity();
  m(2, 1) = b8;
  return m;
}

Matrix3 compose_matrix(const AlgebraCoeffs& b) {
  require_finite(b, "compose_homography");
  return translation_factor(b[kB1], b[kB2]) * similarity_factor(b[kB3], b[kB4]) *
         aspect_factor(b[kB5]) * shear_factor(b[kB6]) * perspective1_factor(b[kB7]) *
         perspective2_factor(b[kB8]);
}

Homography compose_homography(const AlgebraCoeffs& b) { return Homography(compose_matrix(b)); }

IntermediateParams params_from_coeffs(const AlgebraCoeffs& b) {
  return {b[kB1], b[kB2], b[kB3], std::exp(b[kB4]), std::exp(b[kB5]), b[kB6], b[kB7], b[kB8]};
}

AlgebraCoeffs coeffs_from_params(const IntermediateParams& x) {
  if (!(x.gamma > 0.0)) throw DomainError("coeffs_from_params: gamma must be positive");
  if (!(x.k1 > 0.0)) throw DomainError("coeffs_from_params: k1 must be positive");
  return {{x.t1, x.t2, x.theta, std::log(x.gamma), std::log(x.k1), x.k2, x.nu1, x.nu2}};
}

AlgebraCoeffs decompose_homography(const Matrix3& h_in) {
  if (is_singular(h_in)) throw SingularMatrixError("decompose_homography: singular matrix");
  const double scale = h_in.cwiseAbs().maxCoeff();
  if (std::abs(h_in(2, 2)) <= 1e-12 * scale) {
    throw UnrepresentableError("decompose_homography: (3,3) entry vanishes");
  }
  // Product form: [[M + t v^T, t], [v^T, 1]] with M = Hs * Hsc * Hsh.
  const Matrix3 h = h_in / h_in(2, 2);
  const Eigen::Vector2d t(h(0, 2), h(1, 2));
  const Eigen::RowVector2d v(h(2, 0), h(2, 1));
  const Eigen::Matrix2d m = h.topLeftCorner<2, 2>() - t * v;
  if (!(m.determinant() > 0.0)) {
    throw UnrepresentableError("decompose_homography: affine block reverses orientation");
  }

  // M = R(theta) * U with U = s * [[k, k*sh], [0, 1/k]].
  const double theta = std::atan2(m(1, 0), m(0, 0));
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double u11 = c * m(0, 0) + sn * m(1, 0);
  const double u12 = c * m(0, 1) + sn * m(1, 1);
  const double u22 = -sn * m(0, 1) + c * m(1, 1);

  AlgebraCoeffs b;
  b[kB1] = t.x();
  b[kB2] = t.y();
  b[kB3] = theta;
  b[kB4] = 0.5 * std::log(u11 * u22);
  b[kB5] = 0.5 * std::log(u11 / u22);
  b[kB6] = u12 / u11;
  b[kB7] = v.x();
  b[kB8] = v.y();
  return b;
}

AlgebraCoeffs decompose_homography(const Homography& h) { return decompose_homography(h.matrix()); }

double projective_distance(const Matrix3& h1, const Matrix3& h2) {
  return (unit_frobenius_sign_fixed(h1) - unit_frobenius_sign_fixed(h2)).norm();
}

double projective_distance(const Homography& h1, const Homography& h2) {
  return projective_distance(h1.matrix(), h2.matrix());
}

}  // namespace hwarp
