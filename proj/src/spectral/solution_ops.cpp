#include "fks/spectral/solution_ops.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fks/error.hpp"
#include "fks/specfun/gamma.hpp"
#include "fks/specfun/mainardi_wright.hpp"
#include "fks/spectral/fft.hpp"
#include "fks/spectral/parallel.hpp"

namespace fks::spectral {

double kind_beta(OperatorKind kind, double alpha) { return kind == OperatorKind::S ? 1.0 : alpha; }

namespace {

void check_time(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << who << ": t = " << t << " must be positive";
    throw Error(ErrorKind::nonpositive_time, os.str());
  }
}

// Evaluates sym(|ξ|) once per distinct |k|² and multiplies every component.
template <class Sym>
SpectralCoeffs apply_radial(const SpectralCoeffs& F, Sym&& sym) {
  F.validate();
  const ModeTable& mt = modes(F.grid);
  const std::size_t N = F.points();
  int kmax = 0;
  for (int v : mt.k2) kmax = std::max(kmax, v);
  std::vector<char> present(static_cast<std::size_t>(kmax) + 1, 0);
  for (int v : mt.k2) present[v] = 1;
  std::vector<int> uniq;
  for (int v = 0; v <= kmax; ++v)
    if (present[v]) uniq.push_back(v);
  std::vector<double> table(static_cast<std::size_t>(kmax) + 1, 0.0);
  const double k0 = F.grid.k0();
  parallel_for(uniq.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) table[uniq[i]] = sym(k0 * std::sqrt(static_cast<double>(uniq[i])));
  });
  SpectralCoeffs out = F;
  for (std::size_t p = 0; p < N; ++p) {
    const double s = table[mt.k2[p]];
    for (int c = 0; c < F.components; ++c) out.component(c)[p] *= s;
  }
  return out;
}

}  // namespace

double solution_symbol(double xi_norm, double t, const FracParams& p, OperatorKind kind, double theta_order) {
  check_time(t, "solution_op");
  if (!(theta_order >= 0.0)) throw Error(ErrorKind::domain, "solution_op: theta_order must be >= 0");
  const double kb = kind_beta(kind, p.alpha);
  if (xi_norm == 0.0) return theta_order > 0.0 ? 0.0 : specfun::rgamma(kb);
  const double x = std::pow(t, p.alpha) * std::pow(xi_norm, p.beta);
  double v = (p.alpha == 1.0) ? std::exp(-x) : specfun::mittag_leffler(p.alpha, kb, -x);
  if (theta_order > 0.0) v *= std::pow(xi_norm, theta_order);
  return v;
}

SpectralCoeffs solution_op(const SpectralCoeffs& F, double t, const FracParams& p, OperatorKind kind,
                           double theta_order) {
  p.validate();
  check_time(t, "solution_op");
  return apply_radial(F, [&](double xi) { return solution_symbol(xi, t, p, kind, theta_order); });
}

Field solution_op(const Field& f, double t, const FracParams& p, OperatorKind kind, double theta_order) {
  return inverse_transform(solution_op(transform(f), t, p, kind, theta_order));
}

Subordinator::Subordinator(double alpha, OperatorKind kind, const SubordinationOptions& opts)
    : alpha_(alpha), kind_(kind), opts_(opts) {
  if (!(opts.step > 0.0) || !(opts.step < 2.0)) throw Error(ErrorKind::domain, "Subordinator: step must be in (0, 2)");
  if (alpha == 1.0) return;  // M_1 is a point mass at θ = 1
  if (!(alpha > 0.0 && alpha <= specfun::mw_alpha_max)) {
    std::ostringstream os;
    os << "Subordinator: alpha = " << alpha << " needs alpha <= " << specfun::mw_alpha_max << " or alpha = 1";
    throw Error(ErrorKind::domain, os.str());
  }
  // θ = e^s; S weight θ M(θ), P weight α θ² M(θ); both vanish like e^s or
  // faster as s -> -inf.
  const double s_lo = -45.0;
  const double s_hi = std::log(specfun::mainardi_wright_cutoff(alpha));
  // opts.step is the starting step; halve until the mass (x = 0, the widest
  // integrand in θ) passes the fine/coarse check. Steeper M near 1 - α
  // small needs this.
  double step = opts.step;
  for (int tries = 0;; ++tries) {
    const int intervals = static_cast<int>(std::ceil((s_hi - s_lo) / step));
    h_ = (s_hi - s_lo) / intervals;
    const int nf = 2 * intervals + 1;
    theta_.resize(nf);
    weight_.resize(nf);
    for (int i = 0; i < nf; ++i) {
      const double s = s_lo + 0.5 * h_ * i;
      const double th = std::exp(s);
      const double m = specfun::mainardi_wright(alpha, th);
      theta_[i] = th;
      weight_[i] = (kind == OperatorKind::S) ? th * m : alpha * th * th * m;
    }
    if (settled(0.0) || tries == 4) break;
    step *= 0.5;
  }
}

bool Subordinator::settled(double x, double* fine_out, double* diff_out) const {
  double fine = 0.0, coarse = 0.0;
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    const double e = std::exp(-theta_[i] * x);
    const double end = (i == 0 || i + 1 == theta_.size()) ? 0.5 : 1.0;
    fine += end * weight_[i] * e;
    if (i % 2 == 0) coarse += end * weight_[i] * e;
  }
  fine *= 0.5 * h_;
  coarse *= h_;
  const double diff = std::abs(fine - coarse);
  if (fine_out) *fine_out = fine;
  if (diff_out) *diff_out = diff;
  return diff <= opts_.rel_tol * std::abs(fine) + opts_.abs_tol;
}

double Subordinator::operator()(double x) const {
  if (alpha_ == 1.0) return std::exp(-x);
  double fine = 0.0, diff = 0.0;
  if (!settled(x, &fine, &diff)) {
    std::ostringstream os;
    os << "subordination integral did not settle under step halving at x = " << x << " (change " << diff << ")";
    throw Error(ErrorKind::quadrature_nonconvergence, os.str());
  }
  return fine;
}

SpectralCoeffs subordinate_apply(const SpectralCoeffs& F, double t, const FracParams& p, OperatorKind kind,
                                 const SubordinationOptions& opts) {
  p.validate();
  check_time(t, "subordinate_apply");
  Subordinator sub(p.alpha, kind, opts);
  const double ta = std::pow(t, p.alpha);
  return apply_radial(F, [&](double xi) { return sub(ta * std::pow(xi, p.beta)); });
}

Field subordinate_apply(const Field& f, double t, const FracParams& p, OperatorKind kind,
                        const SubordinationOptions& opts) {
  return inverse_transform(subordinate_apply(transform(f), t, p, kind, opts));
}

double duhamel_primitive(double s, double lambda, double alpha) {
  if (s == 0.0) return 0.0;
  const double sa = std::pow(s, alpha);
  if (alpha == 1.0) return lambda == 0.0 ? s : -std::expm1(-lambda * s) / lambda;
  return sa * specfun::mittag_leffler(alpha, alpha + 1.0, -lambda * sa);
}

std::vector<double> duhamel_weights(double lag_a, double lag_b, const FracParams& p,
                                    const std::vector<double>& lambdas) {
  p.validate();
  if (!(lag_a >= 0.0) || !(lag_b > lag_a)) {
    std::ostringstream os;
    os << "duhamel_weights: need 0 <= lag_a < lag_b, got (" << lag_a << ", " << lag_b << ")";
    throw Error(ErrorKind::domain, os.str());
  }
  std::vector<double> w(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lam = lambdas[i];
    if (!(lam >= 0.0)) throw Error(ErrorKind::domain, "duhamel_weights: lambda must be >= 0");
    if (p.alpha == 1.0) {
      // (e^{-λa} - e^{-λb}) / λ without cancellation
      w[i] = (lam == 0.0) ? (lag_b - lag_a) : std::exp(-lam * lag_a) * -std::expm1(-lam * (lag_b - lag_a)) / lam;
    } else {
      w[i] = duhamel_primitive(lag_b, lam, p.alpha) - duhamel_primitive(lag_a, lam, p.alpha);
    }
  }
  return w;
}

}  // namespace fks::spectral
