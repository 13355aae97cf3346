#include "syncorr/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "syncorr/error.hpp"
#include "syncorr/format.hpp"

namespace syncorr {

namespace {

constexpr std::size_t kMaxIterations = 200;
constexpr double kStepTolerance = 1e-10;

struct Line {
  double intercept;
  double slope;
};

Line ols(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

void validate(const Series& s) {
  if (s.points.size() < 3) {
    throw Error("series '" + s.id + "' needs at least 3 points to fit 2 parameters");
  }
  bool distinct = false;
  for (const Point& p : s.points) {
    if (!(p.r > 0.0) || !std::isfinite(p.r)) {
      throw Error("series '" + s.id + "' has non-positive distance r=" + format_double(p.r));
    }
    if (!std::isfinite(p.y)) {
      throw Error("series '" + s.id + "' has non-finite value at r=" + format_double(p.r));
    }
    distinct = distinct || p.r != s.points.front().r;
  }
  if (!distinct) throw Error("series '" + s.id + "' has all points at the same r");
  if (s.log_scaled) {
    std::string bad;
    for (const Point& p : s.points) {
      if (p.y <= 0.0) bad += " (" + format_double(p.r) + ", " + format_double(p.y) + ")";
    }
    if (!bad.empty()) {
      throw Error("series '" + s.id + "' has non-positive values in log mode:" + bad);
    }
  }
}

double model_value(DecayModel m, double c, double k, double r) {
  return m == DecayModel::exponential ? c * std::exp(k * r) : c * std::pow(r, k);
}

double rss_linear(DecayModel m, const std::vector<Point>& pts, double c, double k) {
  double rss = 0.0;
  for (const Point& p : pts) {
    const double e = p.y - model_value(m, c, k, p.r);
    rss += e * e;
  }
  return rss;
}

// Transformed abscissa of the log-linear form: r or ln r.
double abscissa(DecayModel m, double r) { return m == DecayModel::exponential ? r : std::log(r); }

FitResult fit_log(const Series& s, DecayModel m) {
  std::vector<double> x;
  std::vector<double> y;
  for (const Point& p : s.points) {
    x.push_back(abscissa(m, p.r));
    y.push_back(std::log(p.y));
  }
  const Line line = ols(x, y);
  FitResult out;
  out.amplitude = std::exp(line.intercept);
  out.exponent = -line.slope;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (line.intercept + line.slope * x[i]);
    rss += e * e;
  }
  out.chi2_nu = rss / static_cast<double>(x.size() - 2);
  return out;
}

// Seed for the linear-mode fit from a log-linear fit on the positive points.
std::pair<double, double> linear_seed(const Series& s, DecayModel m) {
  std::vector<double> x;
  std::vector<double> y;
  for (const Point& p : s.points) {
    if (p.y > 0.0) {
      x.push_back(abscissa(m, p.r));
      y.push_back(std::log(p.y));
    }
  }
  const bool spread =
      x.size() >= 2 && std::any_of(x.begin(), x.end(), [&](double v) { return v != x.front(); });
  if (!spread) {
    double mean = 0.0;
    for (const Point& p : s.points) mean += p.y;
    return {mean / static_cast<double>(s.points.size()), 0.0};
  }
  const Line line = ols(x, y);
  return {std::exp(line.intercept), line.slope};
}

FitResult fit_linear(const Series& s, DecayModel m) {
  auto [c, k] = linear_seed(s, m);
  double rss = rss_linear(m, s.points, c, k);
  double damping = 1e-3;
  FitResult out;
  out.converged = false;
  for (out.iterations = 0; out.iterations < kMaxIterations;) {
    ++out.iterations;
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
    for (const Point& p : s.points) {
      const double basis = m == DecayModel::exponential ? std::exp(k * p.r) : std::pow(p.r, k);
      const double dc = basis;
      const double dk = c * basis * (m == DecayModel::exponential ? p.r : std::log(p.r));
      const double e = p.y - c * basis;
      a11 += dc * dc;
      a12 += dc * dk;
      a22 += dk * dk;
      g1 += dc * e;
      g2 += dk * e;
    }
    bool accepted = false;
    while (damping < 1e20) {
      const double b11 = a11 * (1.0 + damping);
      const double b22 = a22 * (1.0 + damping);
      const double det = b11 * b22 - a12 * a12;
      if (det == 0.0 || !std::isfinite(det)) {
        damping *= 10.0;
        continue;
      }
      const double dc = (b22 * g1 - a12 * g2) / det;
      const double dk = (b11 * g2 - a12 * g1) / det;
      const double nc = c + dc;
      const double nk = k + dk;
      const double nrss = rss_linear(m, s.points, nc, nk);
      if (std::isfinite(nrss) && nrss <= rss) {
        const double change = std::max(std::abs(dc) / std::max(std::abs(c), 1e-300),
                                       std::abs(dk) / std::max(std::abs(k), 1e-300));
        c = nc;
        k = nk;
        rss = nrss;
        damping = std::max(damping / 10.0, 1e-12);
        accepted = true;
        if (change < kStepTolerance) out.converged = true;
        break;
      }
      damping *= 10.0;
    }
    // No downhill step at any damping: already at the minimum numerically.
    if (!accepted) out.converged = true;
    if (out.converged) break;
  }
  out.amplitude = c;
  out.exponent = k;
  out.chi2_nu = rss / static_cast<double>(s.points.size() - 2);
  return out;
}

FitResult fit(const Series& s, DecayModel m) {
  validate(s);
  FitResult out = s.log_scaled ? fit_log(s, m) : fit_linear(s, m);
  out.series = s.id;
  out.model = m;
  out.log_scaled = s.log_scaled;
  out.n_points = s.points.size();
  for (const Point& p : s.points) out.r_values.push_back(p.r);
  return out;
}

}  // namespace

std::string_view to_string(DecayModel model) {
  return model == DecayModel::exponential ? "exponential" : "power_law";
}

FitResult fit_exponential(const Series& s) { return fit(s, DecayModel::exponential); }

FitResult fit_power_law(const Series& s) { return fit(s, DecayModel::power_law); }

double ModelSelection::ratio() const {
  const double lo = std::min(chi2_exponential, chi2_power_law);
  const double hi = std::max(chi2_exponential, chi2_power_law);
  if (lo == 0.0) return hi == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return hi / lo;
}

ModelSelection select_model(const FitResult& exponential, const FitResult& power_law) {
  auto rs = [](const FitResult& f) {
    auto v = f.r_values;
    std::sort(v.begin(), v.end());
    return v;
  };
  if (exponential.log_scaled != power_law.log_scaled || rs(exponential) != rs(power_law)) {
    throw Error("model selection needs both fits on the same point set");
  }
  ModelSelection out;
  out.chi2_exponential = exponential.chi2_nu;
  out.chi2_power_law = power_law.chi2_nu;
  const double a = exponential.chi2_nu;
  const double b = power_law.chi2_nu;
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0 || std::abs(a - b) / scale < 1e-9) return out;
  out.winner = a < b ? DecayModel::exponential : DecayModel::power_law;
  return out;
}

SplitSeries positive_points(const Series& s) {
  SplitSeries out;
  out.kept.id = s.id;
  out.kept.log_scaled = s.log_scaled;
  for (const Point& p : s.points) {
    if (p.y > 0.0 && std::isfinite(p.y)) {
      out.kept.points.push_back(p);
    } else {
      out.excluded.push_back(p);
    }
  }
  return out;
}

Series restrict_range(const Series& s, double r_min, double r_max) {
  Series out{s.id, {}, s.log_scaled};
  for (const Point& p : s.points) {
    if (p.r >= r_min && p.r <= r_max) out.points.push_back(p);
  }
  return out;
}

}  // namespace syncorr
