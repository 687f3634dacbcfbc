#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace phasebound {

using Complex = std::complex<double>;

/// Photon-number moments of a state. n2_avg is the mean squared
/// photon-difference index, n_max the largest occupied |index|, n_mean the
/// (signed) mean index.
struct PhotonMetrics {
  double n2_avg = 0.0;
  int n_max = 0;
  double n_mean = 0.0;
};

/// Normalized coefficient vector over the signed photon-difference index n.
/// Index n > 0 labels the basis vector with n photons in the first mode,
/// n < 0 the mirror vector with -n photons in the second mode, and n = 0 the
/// two-mode vacuum. A phase shift by theta multiplies the amplitude at index
/// n by exp(i n theta).
///
/// Invariants: lo <= 0 <= hi, and the stored amplitudes have unit l2 norm
/// within 1e-12. Instances are immutable and safe to share across threads.
class StateVector {
 public:
  /// Validates the invariants; throws std::invalid_argument on violation.
  StateVector(int lo, int hi, std::vector<Complex> amplitudes);

  /// Scales the amplitudes to unit norm, then constructs. Throws if the
  /// input has zero norm or a non-finite entry.
  static StateVector normalized(int lo, int hi, std::vector<Complex> amplitudes);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int support_size() const { return hi_ - lo_ + 1; }

  /// Amplitude at index n; zero outside [lo, hi].
  Complex amplitude(int n) const {
    if (n < lo_ || n > hi_) return {0.0, 0.0};
    return amplitudes_[static_cast<std::size_t>(n - lo_)];
  }

  std::span<const Complex> amplitudes() const { return amplitudes_; }

 private:
  int lo_;
  int hi_;
  std::vector<Complex> amplitudes_;
};

PhotonMetrics metrics(const StateVector& state);

/// The equal superposition of n photons in one of two modes, amplitudes
/// 1/sqrt(2) at indices +n and -n. Rejects n < 1.
StateVector build_noon(int n);

struct GaussianBuild {
  StateVector state;
  double normalization;  // prefactor of the unnormalized exp(-n^2/(4 E^2)) profile
};

/// Gaussian-profile state a_n proportional to exp(-n^2 / (4 energy^2)),
/// truncated at |n| <= ceil(cutoff_sigmas * energy).
GaussianBuild build_gaussian(double energy, double cutoff_sigmas = 8.0);

/// Sine-profile state on [-energy, energy]:
/// a_n proportional to sin(pi (energy + n + 1) / (2 energy + 2)).
StateVector build_sine(int energy);

struct CoherentNoonBuild {
  StateVector state;
  double alpha;                  // coherent amplitude; mean photon number alpha^2
  double discarded_probability;  // probability mass dropped by truncation
};

/// Superposition of the two single-mode coherent states with amplitude alpha,
/// one per mode, Poisson amplitudes mapped to indices +k / -k. The k = 0
/// contributions of both branches coincide at index 0, so the branches are
/// non-orthogonal; the squared norm before renormalization is
/// 2 (1 + exp(-alpha^2)). Truncated so the discarded probability stays below
/// tail_tolerance (required to lie in (0, 1e-6]).
CoherentNoonBuild build_coherent_noon(double alpha, double tail_tolerance = 1e-9);

/// Discretizes a continuum profile at the grid x = n / energy for
/// n in [x_lo * energy, x_hi * energy] and normalizes. Rejects zero-norm and
/// non-finite profiles (point masses have no finite-sample representation;
/// use build_noon for those).
StateVector from_continuum(const std::function<Complex(double)>& profile,
                           double x_lo, double x_hi, double energy);

}  // namespace phasebound
