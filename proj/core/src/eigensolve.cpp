#include "phasebound/eigensolve.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "phasebound/toeplitz.hpp"
#include "phasebound/util.hpp"

namespace phasebound {

namespace {

constexpr int kDenseLimit = 2049;
constexpr double kDegenerateGap = 1e-10;

using Eigen::MatrixXd;
using Eigen::VectorXd;

double index_of(int i, int half_width) { return static_cast<double>(i - half_width); }

// Smooth, even, nodeless start vector; overlaps the ground state of every
// window/penalty combination we solve.
VectorXd cosine_seed(int dim) {
  VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = std::cos(pi * (i - (dim - 1) / 2.0) / (dim + 1.0));
  }
  v.normalize();
  return v;
}

// Sign-flipped sine: odd-like, a good seed for the second eigenvector.
VectorXd node_seed(int dim) {
  VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = (i < dim / 2 ? -1.0 : 1.0) * std::sin(pi * (i + 1.0) / (dim + 1.0));
  }
  return v;
}

void canonicalize_sign(VectorXd& v, int half_width) {
  double pivot = v[half_width];
  if (std::abs(pivot) < 1e-12) {
    for (int i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > 1e-8) {
        pivot = v[i];
        break;
      }
    }
  }
  if (pivot < 0.0) v = -v;
}

// Shared assembly: degeneracy flag, deterministic tie-breaks, final residual.
template <typename Matvec>
SmallestEigenpair assemble_pair(double value, VectorXd vector, double second_value,
                                int iterations, int half_width, const Matvec& matvec) {
  SmallestEigenpair out;
  out.value = value;
  out.vector = std::move(vector);
  out.gap = second_value - value;
  out.degenerate = out.gap < kDegenerateGap;
  out.iterations = iterations;
  if (out.degenerate) {
    // Prefer the even-symmetric representative when the ground space allows it.
    VectorXd sym = out.vector + out.vector.reverse();
    if (sym.norm() > 1e-8) out.vector = sym.normalized();
  }
  canonicalize_sign(out.vector, half_width);
  const VectorXd av = matvec(out.vector);
  out.value = out.vector.dot(av);
  out.residual = (av - out.value * out.vector).norm();
  return out;
}

// Generic inverse iteration on a positive definite operator given a solver
// functor y = A^{-1} x. Converges to the smallest eigenpair; `orthogonal_to`
// deflates an already-found eigenvector.
template <typename Solve, typename Matvec>
std::pair<double, VectorXd> inverse_iterate(const Solve& solve, const Matvec& matvec,
                                            VectorXd x, const VectorXd* orthogonal_to,
                                            double tol, int max_iterations,
                                            int* iterations_out) {
  if (orthogonal_to) x -= (orthogonal_to->dot(x)) * (*orthogonal_to);
  x.normalize();
  double value = 0.0;
  int it = 0;
  for (; it < max_iterations; ++it) {
    VectorXd y = solve(x);
    if (orthogonal_to) y -= (orthogonal_to->dot(y)) * (*orthogonal_to);
    const double norm = y.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw numerical_error("inverse iteration produced a degenerate vector");
    }
    y /= norm;
    const VectorXd ay = matvec(y);
    value = y.dot(ay);
    const double resid = (ay - value * y).norm();
    x = y;
    if (resid <= tol) break;
  }
  if (iterations_out) *iterations_out += it + 1;
  return {value, x};
}

SmallestEigenpair solve_dense(int half_width, double lambda) {
  const int dim = 2 * half_width + 1;
  const MatrixXd a = detail::kernel_matrix(half_width, lambda);
  auto matvec = [&](const VectorXd& x) {
    return VectorXd(a.selfadjointView<Eigen::Lower>() * x);
  };

  if (dim <= 64) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
    return assemble_pair(es.eigenvalues()[0], es.eigenvectors().col(0), es.eigenvalues()[1],
                         1, half_width, matvec);
  }
  Eigen::LLT<MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw numerical_error("Cholesky factorization failed; kernel matrix not PD");
  }
  auto solve = [&](const VectorXd& x) { return llt.solve(x); };
  const double tol = 1e-13 * (pi * pi + lambda * half_width * static_cast<double>(half_width));
  int iterations = 0;
  auto [v1, x1] =
      inverse_iterate(solve, matvec, cosine_seed(dim), nullptr, tol, 500, &iterations);
  // Second eigenvalue, deflated: only needed for the degeneracy flag, so a
  // loose tolerance is enough.
  auto [v2, x2] = inverse_iterate(solve, matvec, node_seed(dim), &x1, 1e-6, 60, &iterations);
  return assemble_pair(v1, std::move(x1), v2, iterations, half_width, matvec);
}

// Tridiagonal positive definite solver (Thomas, no pivoting).
class TridiagonalSolver {
 public:
  TridiagonalSolver(VectorXd diag, VectorXd off) : diag_(std::move(diag)), off_(std::move(off)) {
    const int n = static_cast<int>(diag_.size());
    factor_.resize(n);
    factor_[0] = diag_[0];
    for (int i = 1; i < n; ++i) {
      if (!(factor_[i - 1] > 0.0)) throw numerical_error("preconditioner not PD");
      factor_[i] = diag_[i] - off_[i - 1] * off_[i - 1] / factor_[i - 1];
    }
  }

  VectorXd solve(const VectorXd& b) const {
    const int n = static_cast<int>(diag_.size());
    VectorXd y(n);
    y[0] = b[0];
    for (int i = 1; i < n; ++i) y[i] = b[i] - off_[i - 1] / factor_[i - 1] * y[i - 1];
    VectorXd x(n);
    x[n - 1] = y[n - 1] / factor_[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (y[i] - off_[i] * x[i + 1]) / factor_[i];
    return x;
  }

 private:
  VectorXd diag_, off_, factor_;
};

// FFT-accelerated operator for large windows.
class FftKernelOperator {
 public:
  FftKernelOperator(int half_width, double lambda)
      : half_width_(half_width), lambda_(lambda), dim_(2 * half_width + 1) {
    std::size_t len = 1;
    while (len < static_cast<std::size_t>(2 * dim_ - 1)) len <<= 1;
    len_ = len;
    // Circulant embedding of lags -(d-1)..(d-1).
    std::vector<Complex> first(len, Complex{0.0, 0.0});
    for (int k = 0; k < dim_; ++k) first[static_cast<std::size_t>(k)] = kernel_entry(k);
    for (int k = 1; k < dim_; ++k) first[len - static_cast<std::size_t>(k)] = kernel_entry(k);
    kernel_freq_.resize(len);
    Eigen::FFT<double> fft;
    fft.fwd(kernel_freq_, first);
  }

  VectorXd apply(const VectorXd& x) const {
    std::vector<Complex> padded(len_, Complex{0.0, 0.0});
    for (int i = 0; i < dim_; ++i) padded[static_cast<std::size_t>(i)] = x[i];
    Eigen::FFT<double> fft;
    std::vector<Complex> freq(len_);
    fft.fwd(freq, padded);
    for (std::size_t j = 0; j < len_; ++j) freq[j] *= kernel_freq_[j];
    std::vector<Complex> conv(len_);
    fft.inv(conv, freq);
    VectorXd y(dim_);
    for (int i = 0; i < dim_; ++i) {
      const double n = index_of(i, half_width_);
      y[i] = conv[static_cast<std::size_t>(i)].real() + lambda_ * n * n * x[i];
    }
    return y;
  }

  /// Preconditioned CG solve of A y = b. The preconditioner shares the
  /// diagonal penalty, so kappa(M^{-1} A) <= pi^2/4 and the iteration count
  /// is bounded independent of dim.
  VectorXd pcg_solve(const VectorXd& b, double rel_tol, int* iterations) const {
    VectorXd diag(dim_), off(dim_ - 1);
    for (int i = 0; i < dim_; ++i) {
      const double n = index_of(i, half_width_);
      diag[i] = 2.0 + lambda_ * n * n;
    }
    off.setConstant(-1.0);
    const TridiagonalSolver precond(diag, off);

    VectorXd x = VectorXd::Zero(dim_);
    VectorXd r = b;
    VectorXd z = precond.solve(r);
    VectorXd p = z;
    double rz = r.dot(z);
    const double b_norm = b.norm();
    for (int it = 0; it < 500; ++it) {
      const VectorXd ap = apply(p);
      const double alpha = rz / p.dot(ap);
      x += alpha * p;
      r -= alpha * ap;
      if (iterations) ++*iterations;
      if (r.norm() <= rel_tol * b_norm) return x;
      z = precond.solve(r);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    throw numerical_error("preconditioned CG did not converge");
  }

 private:
  int half_width_;
  double lambda_;
  int dim_;
  std::size_t len_ = 0;
  std::vector<Complex> kernel_freq_;
};

SmallestEigenpair solve_iterative(int half_width, double lambda) {
  const int dim = 2 * half_width + 1;
  const FftKernelOperator op(half_width, lambda);
  int outer = 0;
  auto solve = [&](const VectorXd& x) { return op.pcg_solve(x, 1e-13, nullptr); };
  auto matvec = [&](const VectorXd& x) { return op.apply(x); };
  const double tol = 1e-12 * (pi * pi + lambda * half_width * static_cast<double>(half_width));

  auto [v1, x1] = inverse_iterate(solve, matvec, cosine_seed(dim), nullptr, tol, 200, &outer);
  auto [v2, x2] = inverse_iterate(solve, matvec, node_seed(dim), &x1, 1e-6, 60, &outer);
  return assemble_pair(v1, std::move(x1), v2, outer, half_width, matvec);
}

}  // namespace

namespace detail {

Eigen::MatrixXd kernel_matrix(int half_width, double lambda) {
  const int dim = 2 * half_width + 1;
  MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      a(i, j) = kernel_entry(i - j);
      a(j, i) = a(i, j);
    }
    const double n = index_of(i, half_width);
    a(i, i) += lambda * n * n;
  }
  return a;
}

Eigen::VectorXd kernel_matvec_fft(int half_width, double lambda, const Eigen::VectorXd& x) {
  return FftKernelOperator(half_width, lambda).apply(x);
}

}  // namespace detail

SmallestEigenpair smallest_kernel_eigenpair(int half_width, double lambda,
                                            EigenpairMethod method) {
  if (half_width < 0) {
    throw std::invalid_argument("half_width must be nonnegative");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("diagonal penalty must be nonnegative");
  }
  const int dim = 2 * half_width + 1;
  if (dim == 1) {
    SmallestEigenpair out;
    out.value = kernel_entry(0);
    out.vector = VectorXd::Ones(1);
    out.iterations = 1;
    out.gap = 0.0;
    return out;
  }
  const bool dense = method == EigenpairMethod::dense ||
                     (method == EigenpairMethod::automatic && dim <= kDenseLimit);
  return dense ? solve_dense(half_width, lambda) : solve_iterative(half_width, lambda);
}

}  // namespace phasebound
