#include "lyapsep/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "lyapsep/lie_closure.hpp"

namespace lyapsep {

namespace {

// Entire scalar functions behind the block closed form, z = ell^2 * lambda:
//   c(lambda) = sum_k z^k / (2k)!      -> cosh / cos branches
//   s(lambda) = ell * sum_k z^k / (2k+1)! -> sinh / sin branches
// The series keeps both analytic across lambda = 0 where the branch formulas
// cancel catastrophically.
double block_cos(double lambda, double ell) {
  const double z = ell * ell * lambda;
  if (std::abs(z) < 1e-6)
    return 1.0 + z / 2.0 + z * z / 24.0 + z * z * z / 720.0;
  if (lambda > 0.0) return std::cosh(ell * std::sqrt(lambda));
  return std::cos(ell * std::sqrt(-lambda));
}

double block_sin(double lambda, double ell) {
  const double z = ell * ell * lambda;
  if (std::abs(z) < 1e-6)
    return ell * (1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0);
  if (lambda > 0.0) {
    const double r = std::sqrt(lambda);
    return std::sinh(ell * r) / r;
  }
  const double r = std::sqrt(-lambda);
  return std::sin(ell * r) / r;
}

// Diagonal Pade approximants to exp; after each, exp(A) ~ (V - U)^{-1} (V + U).
void pade3(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  const double b[] = {120.0, 60.0, 12.0, 1.0};
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  u.noalias() = a * (b[3] * a2 + b[1] * id);
  v = b[2] * a2 + b[0] * id;
}

void pade5(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  const double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  u.noalias() = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade7(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  const double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                      25200.0,    1512.0,    56.0,      1.0};
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  u.noalias() = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade9(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  const double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                      30270240.0,    2162160.0,    110880.0,     3960.0,
                      90.0,          1.0};
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd a8 = a6 * a2;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  u.noalias() = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade13(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                      1187353796428800.0,  129060195264000.0,   10559470521600.0,
                      670442572800.0,      33522128640.0,       1323241920.0,
                      40840800.0,          960960.0,            16380.0,
                      182.0,               1.0};
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd w = b[13] * a6 + b[11] * a4 + b[9] * a2;
  Eigen::MatrixXd tmp = a6 * w;
  tmp += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  u.noalias() = a * tmp;
  w = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v.noalias() = a6 * w;
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

Eigen::MatrixXd transfer_matrix(const ModelConfig& config, const Omega& omega,
                                double energy) {
  const int n = config.n;
  const Eigen::MatrixXd m = build_m(config, omega, energy);
  const SpectralDecomposition eig = spectral_decomposition(m);

  Eigen::VectorXd cv(n), sv(n);
  for (int i = 0; i < n; ++i) {
    cv[i] = block_cos(eig.values[i], config.ell);
    sv[i] = block_sin(eig.values[i], config.ell);
  }

  const Eigen::MatrixXd& q = eig.vectors;
  const Eigen::MatrixXd c = q * cv.asDiagonal() * q.transpose();
  const Eigen::MatrixXd s = q * sv.asDiagonal() * q.transpose();
  const Eigen::MatrixXd ms =
      q * eig.values.cwiseProduct(sv).asDiagonal() * q.transpose();

  Eigen::MatrixXd t(2 * n, 2 * n);
  t.topLeftCorner(n, n) = c;
  t.topRightCorner(n, n) = s;
  t.bottomLeftCorner(n, n) = ms;
  t.bottomRightCorner(n, n) = c;
  return t;
}

Eigen::MatrixXd transfer_matrix_oracle(const ModelConfig& config, const Omega& omega,
                                       double energy) {
  return expm(config.ell * build_x(config, omega, energy));
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  const double l1norm = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(l1norm)) throw std::invalid_argument("expm: matrix must be finite");
  if (l1norm > 700.0)
    throw std::range_error("expm: input norm exceeds 700, result would overflow");

  Eigen::MatrixXd u(a.rows(), a.cols()), v(a.rows(), a.cols());
  int squarings = 0;
  if (l1norm < 1.495585217958292e-2) {
    pade3(a, u, v);
  } else if (l1norm < 2.539398330063230e-1) {
    pade5(a, u, v);
  } else if (l1norm < 9.504178996162932e-1) {
    pade7(a, u, v);
  } else if (l1norm < 2.097847961257068e0) {
    pade9(a, u, v);
  } else {
    const double maxnorm = 5.371920351148152;
    std::frexp(l1norm / maxnorm, &squarings);
    if (squarings < 0) squarings = 0;
    const Eigen::MatrixXd scaled = a * std::ldexp(1.0, -squarings);
    pade13(scaled, u, v);
  }
  Eigen::MatrixXd numer = v + u;
  Eigen::MatrixXd denom = v - u;
  Eigen::MatrixXd result = denom.partialPivLu().solve(numer);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

double check_symplectic(const Eigen::MatrixXd& t) {
  if (t.rows() != t.cols() || t.rows() % 2 != 0 || t.rows() == 0)
    throw std::invalid_argument("check_symplectic: matrix must be square of even dimension");
  const Eigen::MatrixXd j = symplectic_form(static_cast<int>(t.rows()) / 2);
  return spectral_norm(t.transpose() * j * t - j);
}

double spectral_norm(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace lyapsep
