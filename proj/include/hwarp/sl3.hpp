#pragma once

// sl(3) generators, the matrix exponential, and the six-factor homography
// parameterization H = Ht * Hs * Hsc * Hsh * Hp1 * Hp2 with its inverse.

#include <array>
#include <cstddef>

#include <Eigen/Core>

namespace hwarp {

using Matrix3 = Eigen::Matrix3d;
using Vector2 = Eigen::Vector2d;

// Coefficients b1..b8 of the eight generators. Index i holds b_{i+1}:
// b1,b2 translation (px), b3 rotation (rad), b4 log isotropic scale,
// b5 log aspect ratio, b6 shear, b7,b8 perspective (1/px).
struct AlgebraCoeffs {
  std::array<double, 8> b{};

  double& operator[](std::size_t i) { return b[i]; }
  double operator[](std::size_t i) const { return b[i]; }

  bool all_finite() const;
  bool operator==(const AlgebraCoeffs&) const = default;
};

// Indices into AlgebraCoeffs::b.
enum Coeff : std::size_t { kB1 = 0, kB2, kB3, kB4, kB5, kB6, kB7, kB8 };

// The homography-friendly reparameterization
// x = [t1, t2, theta, gamma, k1, k2, nu1, nu2] = [b1, b2, b3, e^b4, e^b5, b6, b7, b8].
struct IntermediateParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double theta = 0.0;
  double gamma = 1.0;
  double k1 = 1.0;
  double k2 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
};

// Projective 3x3 matrix stored with det = 1. Construction from a singular or
// non-finite matrix throws SingularMatrixError.
class Homography {
 public:
  Homography() : m_(Matrix3::Identity()) {}
  explicit Homography(const Matrix3& m);

  static Homography identity() { return Homography(); }

  const Matrix3& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_(r, c); }

  Homography inverse() const;
  Homography operator*(const Homography& rhs) const;

  // Dehomogenized image of p. Returns non-finite coordinates when p maps to
  // the line at infinity.
  Vector2 map(const Vector2& p) const;

 private:
  Matrix3 m_;
};

// A1..A8 in fixed order.
const std::array<Matrix3, 8>& generators();

// Sum_i b_i A_i.
Matrix3 algebra_element(const AlgebraCoeffs& b);

// Matrix exponential of an arbitrary 3x3 matrix by scaling and squaring with
// a degree-13 Pade approximant.
Matrix3 expm(const Matrix3& a);

Homography exp_sl3(const AlgebraCoeffs& b);

// Closed-form subgroup factors, unnormalized (Hs carries det e^{2 b4}).
Matrix3 translation_factor(double b1, double b2);
Matrix3 similarity_factor(double b3, double b4);
Matrix3 aspect_factor(double b5);
Matrix3 shear_factor(double b6);
Matrix3 perspective1_factor(double b7);
Matrix3 perspective2_factor(double b8);

// Unnormalized six-factor product; entry (3,3) is exactly 1.
Matrix3 compose_matrix(const AlgebraCoeffs& b);

Homography compose_homography(const AlgebraCoeffs& b);

IntermediateParams params_from_coeffs(const AlgebraCoeffs& b);
AlgebraCoeffs coeffs_from_params(const IntermediateParams& x);

// Inverse of compose_homography. Throws SingularMatrixError for singular
// input and UnrepresentableError when the affine block reflects or the
// (3,3) entry vanishes.
AlgebraCoeffs decompose_homography(const Matrix3& h);
AlgebraCoeffs decompose_homography(const Homography& h);

// Frobenius distance between unit-Frobenius, sign-fixed representatives.
double projective_distance(const Matrix3& h1, const Matrix3& h2);
double projective_distance(const Homography& h1, const Homography& h2);

}  // namespace hwarp
