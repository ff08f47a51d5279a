#include "rsharp/spectral.hpp"

#include <fftw3.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>

#include "rsharp/error.hpp"
#include "rsharp/numerics.hpp"

namespace rsharp {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void require_size(std::size_t n) {
  if (!is_pow2(n)) fail(ErrorKind::Size, "signal length must be a power of two >= 2, got " + std::to_string(n));
}

void require_sigma(double sigma) {
  if (!(sigma >= 0.0 && sigma < 1.0)) fail(ErrorKind::Domain, "grid offset must lie in [0, 1)");
}

// In-place style transform: plan creation and destruction are serialized,
// execution is thread safe.
std::vector<cplx> fft(std::vector<cplx> data, int direction) {
  const int n = static_cast<int>(data.size());
  std::vector<cplx> out(data.size());
  auto* in_ptr = reinterpret_cast<fftw_complex*>(data.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in_ptr, out_ptr, direction, FFTW_ESTIMATE);
  }
  if (plan == nullptr) fail(ErrorKind::Size, "FFT planner failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

long mode_of(std::size_t k, std::size_t n) { return static_cast<long>(k) - static_cast<long>(n / 2); }

template <class F>
CircleSignal map_spectrum(const CircleSignal& f, F&& mult) {
  const std::size_t n = f.size();
  std::vector<cplx> spec = f.spectrum();
  for (std::size_t k = 0; k < n; ++k) spec[k] *= mult(mode_of(k, n));
  return CircleSignal::from_spectrum(std::move(spec), f.sigma());
}

double sgn(long n) { return n > 0 ? 1.0 : (n < 0 ? -1.0 : 0.0); }

}  // namespace

// ---- CircleSignal

CircleSignal CircleSignal::from_samples(std::vector<cplx> samples, double sigma) {
  require_size(samples.size());
  require_sigma(sigma);
  CircleSignal s;
  s.spectrum_ = fourier_analyze(samples, sigma);
  s.samples_ = std::move(samples);
  s.sigma_ = sigma;
  return s;
}

CircleSignal CircleSignal::from_spectrum(std::vector<cplx> spectrum, double sigma) {
  require_size(spectrum.size());
  require_sigma(sigma);
  CircleSignal s;
  s.samples_ = fourier_synthesize(spectrum, sigma);
  s.spectrum_ = std::move(spectrum);
  s.sigma_ = sigma;
  return s;
}

cplx CircleSignal::coefficient(long n) const {
  const long half = static_cast<long>(size() / 2);
  if (n < -half || n >= half) return {0.0, 0.0};
  return spectrum_[static_cast<std::size_t>(n + half)];
}

double CircleSignal::node(std::size_t j) const {
  return 2.0 * num::pi * (static_cast<double>(j) + sigma_) / static_cast<double>(size());
}

// ---- transforms

std::vector<cplx> fourier_analyze(const std::vector<cplx>& samples, double sigma) {
  const std::size_t n = samples.size();
  require_size(n);
  require_sigma(sigma);
  const std::vector<cplx> raw = fft(samples, FFTW_FORWARD);
  std::vector<cplx> spec(n);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long m = mode_of(k, n);
    const std::size_t idx = static_cast<std::size_t>((m % static_cast<long>(n) + static_cast<long>(n)) %
                                                     static_cast<long>(n));
    cplx c = raw[idx] * inv;
    if (sigma != 0.0) c *= std::polar(1.0, -2.0 * num::pi * static_cast<double>(m) * sigma / static_cast<double>(n));
    spec[k] = c;
  }
  return spec;
}

std::vector<cplx> fourier_synthesize(const std::vector<cplx>& spectrum, double sigma) {
  const std::size_t n = spectrum.size();
  require_size(n);
  require_sigma(sigma);
  std::vector<cplx> wrapped(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long m = mode_of(k, n);
    const std::size_t idx = static_cast<std::size_t>((m % static_cast<long>(n) + static_cast<long>(n)) %
                                                     static_cast<long>(n));
    cplx c = spectrum[k];
    if (sigma != 0.0) c *= std::polar(1.0, 2.0 * num::pi * static_cast<double>(m) * sigma / static_cast<double>(n));
    wrapped[idx] = c;
  }
  return fft(std::move(wrapped), FFTW_BACKWARD);
}

CircleSignal project_plus(const CircleSignal& f) {
  return map_spectrum(f, [](long n) { return cplx(n >= 0 ? 1.0 : 0.0, 0.0); });
}

CircleSignal project_minus(const CircleSignal& f) {
  return map_spectrum(f, [](long n) { return cplx(n < 0 ? 1.0 : 0.0, 0.0); });
}

CircleSignal harmonic_conjugate(const CircleSignal& f) {
  return map_spectrum(f, [](long n) { return cplx(0.0, -sgn(n)); });
}

CircleSignal poisson_extend(const CircleSignal& f, double r) {
  if (!(r >= 0.0 && r < 1.0)) fail(ErrorKind::Domain, "Poisson radius must lie in [0, 1)");
  return map_spectrum(f, [r](long n) { return cplx(n == 0 ? 1.0 : std::pow(r, std::labs(n)), 0.0); });
}

double lp_norm(const std::vector<cplx>& samples, double p) {
  if (!(p > 0.0)) fail(ErrorKind::Domain, "norm exponent must be positive");
  if (samples.empty()) fail(ErrorKind::Size, "empty signal");
  double scale = 0.0;
  for (const cplx& z : samples) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (const cplx& z : samples) acc += std::pow(std::abs(z) / scale, p);
  return scale * std::pow(acc / static_cast<double>(samples.size()), 1.0 / p);
}

double lp_norm(const CircleSignal& f, double p) { return lp_norm(f.samples(), p); }

CircleSignal aggregate_s(const CircleSignal& a, const CircleSignal& b, double s) {
  if (a.size() != b.size() || a.sigma() != b.sigma())
    fail(ErrorKind::Size, "aggregate_s: signals live on different grids");
  if (!(s > 0.0)) fail(ErrorKind::Domain, "aggregation exponent must be positive");
  std::vector<cplx> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double x = std::abs(a.samples()[j]);
    const double y = std::abs(b.samples()[j]);
    const double hi = std::max(x, y);
    const double lo = std::min(x, y);
    out[j] = hi == 0.0 ? 0.0 : hi * std::pow(1.0 + std::pow(lo / hi, s), 1.0 / s);
  }
  return CircleSignal::from_samples(std::move(out), a.sigma());
}

double projection_ratio(const CircleSignal& f, double p, double s) {
  const double den = lp_norm(f, p);
  if (den == 0.0) fail(ErrorKind::ZeroNorm, "projection_ratio: signal has zero norm");
  return lp_norm(aggregate_s(project_plus(f), project_minus(f), s), p) / den;
}

double conjugate_route_ratio(const CircleSignal& f, double p, double s) {
  const double den = lp_norm(f, p);
  if (den == 0.0) fail(ErrorKind::ZeroNorm, "conjugate_route_ratio: signal has zero norm");
  const CircleSignal h = harmonic_conjugate(f);
  const cplx i(0.0, 1.0);
  // Removing the mean and Nyquist parts keeps the conjugate route exact on a finite grid.
  const long half = static_cast<long>(f.size() / 2);
  std::vector<cplx> plus(f.size()), minus(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    plus[j] = 0.5 * (f.samples()[j] + i * h.samples()[j]);
    minus[j] = 0.5 * (f.samples()[j] - i * h.samples()[j]);
  }
  CircleSignal P = CircleSignal::from_samples(std::move(plus), f.sigma());
  CircleSignal M = CircleSignal::from_samples(std::move(minus), f.sigma());
  std::vector<cplx> ps = P.spectrum(), ms = M.spectrum();
  const cplx c0 = f.coefficient(0);
  const cplx cn = f.coefficient(-half);
  ps[static_cast<std::size_t>(half)] = c0;
  ms[static_cast<std::size_t>(half)] = 0.0;
  ps[0] = 0.0;
  ms[0] = cn;
  P = CircleSignal::from_spectrum(std::move(ps), f.sigma());
  M = CircleSignal::from_spectrum(std::move(ms), f.sigma());
  return lp_norm(aggregate_s(P, M, s), p) / den;
}

CircleSignal random_band_limited(std::size_t N, int bandwidth, std::uint64_t seed, double sigma) {
  require_size(N);
  if (bandwidth < 0) fail(ErrorKind::Domain, "bandwidth must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> spec(N, cplx(0.0, 0.0));
  const long half = static_cast<long>(N / 2);
  const long band = std::min<long>(bandwidth, half - 1);
  for (long n = -band; n <= band; ++n) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    spec[static_cast<std::size_t>(n + half)] = cplx(re, im);
  }
  return CircleSignal::from_spectrum(std::move(spec), sigma);
}

// ---- extremal family

void ExtremalFamilyParams::validate(double p) const {
  if (!(gamma > 0.0 && gamma < 1.0)) fail(ErrorKind::Domain, "gamma must lie in (0, 1)");
  if (!(dilation_r > 0.0 && dilation_r <= 1.0)) fail(ErrorKind::Domain, "dilation radius must lie in (0, 1]");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) fail(ErrorKind::Domain, "alpha and beta must be finite");
  if (p > 0.0 && !(gamma * p < 1.0)) fail(ErrorKind::Domain, "gamma * p must be below 1");
}

cplx g_gamma(double t, double gamma, double r) {
  if (r == 1.0) {
    const double tr = std::remainder(t, 2.0 * num::pi);
    if (std::fabs(tr) == num::pi) return {0.0, 0.0};
    if (tr == 0.0) fail(ErrorKind::SingularNode, "g_gamma evaluated at the pole t = 0");
    // cot(t/2) with the sign of the arc; boundary values are |cot|^g e^{+-i g pi/2}.
    const double c = 1.0 / std::tan(0.5 * tr);
    const double mag = std::pow(std::fabs(c), gamma);
    const double ph = (c > 0.0 ? 1.0 : -1.0) * gamma * num::pi * 0.5;
    return std::polar(mag, ph);
  }
  const cplx z = std::polar(r, t);
  return std::exp(gamma * std::log((1.0 + z) / (1.0 - z)));
}

ExtremalPair extremal_signal(const ExtremalFamilyParams& params, std::size_t N, double sigma) {
  params.validate();
  require_size(N);
  if (sigma == 0.0) fail(ErrorKind::SingularNode, "extremal signal needs the half-cell grid; sigma = 0 hits the pole");
  require_sigma(sigma);
  const double tan_half = std::tan(0.5 * num::pi * params.gamma);
  std::vector<cplx> gs(N), fs(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double t = 2.0 * num::pi * (static_cast<double>(j) + sigma) / static_cast<double>(N);
    const cplx g = g_gamma(t, params.gamma, params.dilation_r);
    if (params.dilation_r == 1.0) {
      const double lhs = std::fabs(g.imag());
      const double rhs = tan_half * g.real();
      if (std::fabs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(g)))
        fail(ErrorKind::Convergence, "boundary identity |Im g| = tan(pi gamma/2) Re g violated");
    }
    gs[j] = g;
    fs[j] = cplx(params.alpha * g.real(), params.beta * g.imag());
  }
  return {CircleSignal::from_samples(std::move(fs), sigma), CircleSignal::from_samples(std::move(gs), sigma)};
}

ProjectionPair closed_form_projections(const ExtremalFamilyParams& params, std::size_t N, double sigma) {
  const ExtremalPair ex = extremal_signal(params, N, sigma);
  const double a = 0.5 * (params.alpha + params.beta);
  const double b = 0.5 * (params.alpha - params.beta);
  std::vector<cplx> plus(N), minus(N);
  for (std::size_t j = 0; j < N; ++j) {
    const cplx g = ex.g.samples()[j];
    plus[j] = a * g + b;
    minus[j] = b * (std::conj(g) - 1.0);
  }
  return {CircleSignal::from_samples(std::move(plus), sigma), CircleSignal::from_samples(std::move(minus), sigma)};
}

SweepSetup sharpness_setup(double p, double s, double y_star) {
  if (!(p > 1.0) || !(s > 0.0) || !(y_star >= 0.0)) fail(ErrorKind::Domain, "sharpness_setup: bad parameters");
  const double e = std::exp(-y_star);
  const double diff = p >= 2.0 ? -e : e;
  SweepSetup out;
  out.alpha = 0.5 * (1.0 + diff);
  out.beta = 0.5 * (1.0 - diff);
  const double c = std::cos(0.5 * num::pi / p);
  const double sn = std::sin(0.5 * num::pi / p);
  const double num_ = std::pow(std::pow(std::fabs(out.alpha + out.beta), s) + std::pow(std::fabs(diff), s), 1.0 / s);
  const double den = 2.0 * std::sqrt(out.alpha * out.alpha * c * c + out.beta * out.beta * sn * sn);
  out.target = num_ / den;
  const double sign = p >= 2.0 ? -1.0 : 1.0;
  const double hyp = std::exp((num::logcosh(0.5 * s * y_star) + std::numbers::ln2) / s) /
                     (std::sqrt(2.0) * std::sqrt(std::cosh(y_star) + sign * std::cos(num::pi / p)));
  out.cosh_form = hyp;
  return out;
}

double sharpness_quadrature_ratio(double p, double s, double gamma, double alpha, double beta) {
  ExtremalFamilyParams prm{gamma, alpha, beta, 1.0};
  prm.validate(p);
  const double a = 0.5 * (alpha + beta);
  const double b = 0.5 * (alpha - beta);
  const double cg = std::cos(0.5 * num::pi * gamma);
  const double sg = std::sin(0.5 * num::pi * gamma);
  const double fmod = std::sqrt(alpha * alpha * cg * cg + beta * beta * sg * sg);
  const cplx phase = std::polar(1.0, 0.5 * num::pi * gamma);
  // The integrands on (pi, 2pi) mirror those on (0, pi), so one arc suffices.
  // t = pi v^m flattens the t^{-gamma p} endpoint singularity.
  const double m = 1.0 / (1.0 - gamma * p);
  // h(u) / u^p stays bounded as u grows, so the weight u^p * jacobian is
  // assembled in logs and u is capped once the quotient has converged.
  auto integrate = [&](auto&& h) {
    auto integrand = [&](double v) {
      if (v <= 0.0) return 0.0;
      const double log_t = std::log(num::pi) + m * std::log(v);
      const double t = std::exp(log_t);
      const double log_cot = t < 1e-8 ? std::log(2.0) - log_t : std::log(1.0 / std::tan(0.5 * t));
      const double log_w = gamma * p * log_cot + std::log(num::pi * m) + (m - 1.0) * std::log(v);
      const double u = std::exp(std::min(gamma * log_cot, 50.0));
      if (u == 0.0) return 0.0;
      return h(u) / std::pow(u, p) * std::exp(log_w);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(integrand, 0.0, 1.0, 1e-12);
  };
  const double den = integrate([&](double u) { return std::pow(u * fmod, p); });
  const double num_ = integrate([&](double u) {
    const cplx g = u * phase;
    const double x = std::abs(a * g + b);
    const double y = std::abs(b * (std::conj(g) - 1.0));
    const double hi = std::max(x, y);
    if (hi == 0.0) return 0.0;
    const double agg = hi * std::pow(1.0 + std::pow(std::min(x, y) / hi, s), 1.0 / s);
    return std::pow(agg, p);
  });
  if (!(den > 0.0)) fail(ErrorKind::ZeroNorm, "extremal signal has zero norm");
  return std::pow(num_ / den, 1.0 / p);
}

std::vector<SweepRow> sharpness_sweep(double p, double s, const std::vector<double>& gammas, double y_star,
                                      std::size_t N) {
  const SweepSetup setup = sharpness_setup(p, s, y_star);
  std::vector<SweepRow> rows;
  rows.reserve(gammas.size());
  for (double gamma : gammas) {
    ExtremalFamilyParams prm{gamma, setup.alpha, setup.beta, 1.0};
    prm.validate(p);
    SweepRow row;
    row.gamma = gamma;
    row.target = setup.target;
    row.ratio = sharpness_quadrature_ratio(p, s, gamma, setup.alpha, setup.beta);
    const ExtremalPair ex = extremal_signal(prm, N);
    const ProjectionPair pr = closed_form_projections(prm, N);
    row.grid_ratio = lp_norm(aggregate_s(pr.plus, pr.minus, s), p) / lp_norm(ex.f, p);
    rows.push_back(row);
  }
  return rows;
}

// ---- isoperimetric

double isoperimetric_bound(double p) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "isoperimetric bound needs p > 1");
  if (p >= 2.0) return (std::sqrt(2.0) + 1.0) / std::sqrt(2.0);
  return std::pow(std::cos(0.25 * num::pi / p) / std::cos(0.5 * num::pi / p), 2.0 * p);
}

IsoperimetricResult isoperimetric_ratio(const CircleSignal& f, double p, int n_r) {
  if (n_r < 1) fail(ErrorKind::Domain, "n_r must be positive");
  const double base = lp_norm(f, p);
  if (base == 0.0) fail(ErrorKind::ZeroNorm, "isoperimetric_ratio: zero signal");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n_r)), &gsl_integration_glfixed_table_free);
  if (!table) fail(ErrorKind::Convergence, "Gauss-Legendre table allocation failed");
  double acc = 0.0;
  for (int i = 0; i < n_r; ++i) {
    double r = 0.0, w = 0.0;
    gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &r, &w, table.get());
    const double m = std::pow(lp_norm(poisson_extend(f, r), 2.0 * p) / base, 2.0 * p);
    acc += w * 2.0 * r * m;
  }
  return {acc, isoperimetric_bound(p)};
}

// ---- text formats

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::vector<double>> read_rows(std::istream& is, const char* header) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::Io, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) fail(ErrorKind::Io, std::string("expected header '") + header + "'");
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) fail(ErrorKind::Io, "malformed number '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != 3) fail(ErrorKind::Io, "expected three columns: " + line);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_samples_csv(std::ostream& os, const CircleSignal& f) {
  os << "t,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j)
    os << fmt17(f.node(j)) << ',' << fmt17(f.samples()[j].real()) << ',' << fmt17(f.samples()[j].imag()) << '\n';
}

void write_coefficients_csv(std::ostream& os, const CircleSignal& f) {
  os << "n,re,im\n";
  const long half = static_cast<long>(f.size() / 2);
  for (std::size_t k = 0; k < f.size(); ++k)
    os << (static_cast<long>(k) - half) << ',' << fmt17(f.spectrum()[k].real()) << ','
       << fmt17(f.spectrum()[k].imag()) << '\n';
}

CircleSignal read_samples_csv(std::istream& is) {
  const auto rows = read_rows(is, "t,re,im");
  const std::size_t n = rows.size();
  require_size(n);
  const double offset = rows[0][0] * static_cast<double>(n) / (2.0 * num::pi);
  double sigma = 0.0;
  if (std::fabs(offset - 0.5) < 1e-9) sigma = 0.5;
  else if (std::fabs(offset) > 1e-9) fail(ErrorKind::Io, "first node is neither 0 nor a half cell");
  std::vector<cplx> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = cplx(rows[j][1], rows[j][2]);
  return CircleSignal::from_samples(std::move(s), sigma);
}

CircleSignal read_coefficients_csv(std::istream& is) {
  const auto rows = read_rows(is, "n,re,im");
  std::map<long, cplx> coeffs;
  for (const auto& r : rows) coeffs[std::lround(r[0])] += cplx(r[1], r[2]);
  if (coeffs.empty()) fail(ErrorKind::Io, "no coefficients");
  const long lo = coeffs.begin()->first;
  const long hi = coeffs.rbegin()->first;
  // Smallest power of two whose mode range [-N/2, N/2) covers every index.
  std::size_t size = 2;
  while (static_cast<long>(size / 2) < -lo || static_cast<long>(size / 2) <= hi) size *= 2;
  std::vector<cplx> spec(size, cplx(0.0, 0.0));
  const long half = static_cast<long>(size / 2);
  for (const auto& [n, c] : coeffs) spec[static_cast<std::size_t>(n + half)] = c;
  return CircleSignal::from_spectrum(std::move(spec), 0.0);
}

}  // namespace rsharp
