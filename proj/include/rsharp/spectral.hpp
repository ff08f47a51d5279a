#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rsharp {

using cplx = std::complex<double>;

// Complex function on the unit circle sampled at t_j = 2 pi (j + sigma) / N,
// N a power of two, with Fourier coefficients for n in [-N/2, N/2).
// The coefficient of mode n is stored at index n + N/2.
class CircleSignal {
 public:
  static CircleSignal from_samples(std::vector<cplx> samples, double sigma = 0.0);
  static CircleSignal from_spectrum(std::vector<cplx> spectrum, double sigma = 0.0);

  [[nodiscard]] std::size_t size() const { return samples_.size(); }
  [[nodiscard]] double sigma() const { return sigma_; }
  [[nodiscard]] const std::vector<cplx>& samples() const { return samples_; }
  [[nodiscard]] const std::vector<cplx>& spectrum() const { return spectrum_; }
  [[nodiscard]] cplx coefficient(long n) const;
  [[nodiscard]] double node(std::size_t j) const;

 private:
  CircleSignal() = default;
  std::vector<cplx> samples_;
  std::vector<cplx> spectrum_;
  double sigma_ = 0.0;
};

// DFT pair with 1/N on analysis. Throws Size unless N is a power of two >= 2.
std::vector<cplx> fourier_analyze(const std::vector<cplx>& samples, double sigma = 0.0);
std::vector<cplx> fourier_synthesize(const std::vector<cplx>& spectrum, double sigma = 0.0);

CircleSignal project_plus(const CircleSignal& f);
CircleSignal project_minus(const CircleSignal& f);
CircleSignal harmonic_conjugate(const CircleSignal& f);
CircleSignal poisson_extend(const CircleSignal& f, double r);

double lp_norm(const CircleSignal& f, double p);
double lp_norm(const std::vector<cplx>& samples, double p);

// Pointwise (|a|^s + |b|^s)^{1/s}.
CircleSignal aggregate_s(const CircleSignal& a, const CircleSignal& b, double s);

double projection_ratio(const CircleSignal& f, double p, double s);
// Same ratio through (f + i f~)/2 and (f - i f~)/2.
double conjugate_route_ratio(const CircleSignal& f, double p, double s);

// Random coefficients on modes |n| <= bandwidth, deterministic in seed.
CircleSignal random_band_limited(std::size_t N, int bandwidth, std::uint64_t seed, double sigma = 0.0);

// ---- extremal family built from ((1+z)/(1-z))^gamma

struct ExtremalFamilyParams {
  double gamma = 0.25;
  double alpha = 1.0;
  double beta = 0.0;
  double dilation_r = 1.0;

  // gamma in (0, 1), r in (0, 1], and gamma * p < 1 when p > 0 is given.
  void validate(double p = 0.0) const;
};

// ((1+z)/(1-z))^gamma at z = r e^{it}, principal power.
cplx g_gamma(double t, double gamma, double r = 1.0);

struct ExtremalPair {
  CircleSignal f;
  CircleSignal g;
};
struct ProjectionPair {
  CircleSignal plus;
  CircleSignal minus;
};

// Half-cell grid is mandatory; sigma = 0 throws SingularNode.
ExtremalPair extremal_signal(const ExtremalFamilyParams& params, std::size_t N, double sigma = 0.5);
ProjectionPair closed_form_projections(const ExtremalFamilyParams& params, std::size_t N,
                                       double sigma = 0.5);

struct SweepRow {
  double gamma = 0.0;
  double ratio = 0.0;       // adaptive quadrature of the closed-form integrands
  double grid_ratio = 0.0;  // uniform-grid ratio at the requested N
  double target = 0.0;
};

struct SweepSetup {
  double alpha = 0.0;
  double beta = 0.0;
  double target = 0.0;
  double cosh_form = 0.0;  // the same target through the hyperbolic expression
};

// alpha + beta = 1 and alpha - beta = e^{-y} for p < 2, -e^{-y} for p >= 2.
SweepSetup sharpness_setup(double p, double s, double y_star);
double sharpness_quadrature_ratio(double p, double s, double gamma, double alpha, double beta);
std::vector<SweepRow> sharpness_sweep(double p, double s, const std::vector<double>& gammas,
                                      double y_star, std::size_t N);

struct IsoperimetricResult {
  double value = 0.0;
  double bound = 0.0;
  [[nodiscard]] bool within() const { return value <= bound; }
};

double isoperimetric_bound(double p);
IsoperimetricResult isoperimetric_ratio(const CircleSignal& f, double p, int n_r = 32);

// ---- text formats: samples as (t, re, im), coefficients as (n, re, im)
void write_samples_csv(std::ostream& os, const CircleSignal& f);
void write_coefficients_csv(std::ostream& os, const CircleSignal& f);
CircleSignal read_samples_csv(std::istream& is);
CircleSignal read_coefficients_csv(std::istream& is);

}  // namespace rsharp
