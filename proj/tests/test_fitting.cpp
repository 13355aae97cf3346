#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "syncorr/error.hpp"
#include "syncorr/fitting.hpp"
#include "syncorr/rng.hpp"

using namespace syncorr;

namespace {

template <class F>
Series sampled(F&& f, int lo, int hi, bool log_scaled = true) {
  Series s{"test", {}, log_scaled};
  for (int r = lo; r <= hi; ++r) s.points.push_back({static_cast<double>(r), f(static_cast<double>(r))});
  return s;
}

}  // namespace

TEST_SUITE("fitting") {
  TEST_CASE("exact exponential recovers its parameters") {
    const Series s = sampled([](double r) { return 2.0 * std::exp(-0.1 * r); }, 1, 20);
    const FitResult f = fit_exponential(s);
    CHECK(f.amplitude == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.exponent == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(f.chi2_nu < 1e-25);
    CHECK(f.n_points == 20);
    CHECK(f.n_params == 2);
    CHECK(f.model == DecayModel::exponential);
    CHECK(fit_power_law(s).chi2_nu > f.chi2_nu);
  }

  TEST_CASE("exact power law recovers its parameters") {
    const Series s = sampled([](double r) { return 3.0 * std::pow(r, -1.5); }, 1, 30);
    const FitResult f = fit_power_law(s);
    CHECK(f.amplitude == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.exponent == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f.chi2_nu < 1e-25);

    const Series inv = sampled([](double r) { return std::pow(r, -2.0); }, 1, 20);
    CHECK(fit_exponential(inv).chi2_nu > fit_power_law(inv).chi2_nu);
    const Series e = sampled([](double r) { return std::exp(-r); }, 1, 20);
    CHECK(fit_power_law(e).chi2_nu > fit_exponential(e).chi2_nu);
  }

  TEST_CASE("log mode is closed-form OLS on transformed points") {
    const Series s{"hand", {{1, std::exp(1.0)}, {2, std::exp(3.0)}, {3, std::exp(2.0)}}, true};
    const FitResult f = fit_exponential(s);
    // ln y = 1 + 0.5 r; residuals -0.5, 1, -0.5.
    CHECK(f.exponent == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(f.amplitude == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(f.chi2_nu == doctest::Approx(1.5).epsilon(1e-14));

    const Series p{"hand", {{1, 1.0}, {std::exp(1.0), std::exp(-2.0)}, {std::exp(2.0), std::exp(-2.0)}}, true};
    const FitResult g = fit_power_law(p);
    // (ln r, ln y) = (0,0), (1,-2), (2,-2): slope -1, intercept -1/3.
    CHECK(g.exponent == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.amplitude == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-14));
    CHECK(g.chi2_nu == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("chi2 is invariant under permutation") {
    Rng rng(1);
    Series s = sampled([&](double r) { return std::exp(-0.2 * r) * (1.0 + 0.1 * rng.uniform()); }, 1, 25);
    const double e0 = fit_exponential(s).chi2_nu;
    const double p0 = fit_power_law(s).chi2_nu;
    for (int k = 0; k < 10; ++k) {
      rng.shuffle(std::span<Point>(s.points));
      CHECK(fit_exponential(s).chi2_nu == doctest::Approx(e0).epsilon(1e-10));
      CHECK(fit_power_law(s).chi2_nu == doctest::Approx(p0).epsilon(1e-10));
    }
  }

  TEST_CASE("rescaling r changes B but not alpha; shifting ln y changes only amplitude") {
    Rng rng(2);
    const Series s = sampled([&](double r) { return std::pow(r, -0.7) * (1.0 + 0.2 * rng.uniform()); }, 1, 30);
    const FitResult base = fit_power_law(s);
    Series scaled = s;
    for (Point& p : scaled.points) p.r *= 7.5;
    const FitResult f = fit_power_law(scaled);
    CHECK(std::abs(f.exponent - base.exponent) <= 1e-9);
    CHECK(std::abs(f.amplitude - base.amplitude) > 1e-3);

    Series shifted = s;
    for (Point& p : shifted.points) p.y *= std::exp(2.0);
    for (auto fit : {fit_power_law, fit_exponential}) {
      const FitResult a = fit(s);
      const FitResult b = fit(shifted);
      CHECK(b.exponent == doctest::Approx(a.exponent).epsilon(1e-10));
      CHECK(b.amplitude == doctest::Approx(a.amplitude * std::exp(2.0)).epsilon(1e-10));
      CHECK(b.chi2_nu == doctest::Approx(a.chi2_nu).epsilon(1e-8));
    }
  }

  TEST_CASE("linear mode fits growth curves without log-scaling") {
    const Series g = sampled([](double r) { return 1.5 * std::exp(0.2 * r); }, 1, 20, false);
    const FitResult e = fit_exponential(g);
    CHECK_FALSE(e.log_scaled);
    CHECK(e.converged);
    CHECK(e.amplitude == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(e.exponent == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(e.chi2_nu < 1e-15);

    const Series p = sampled([](double r) { return 0.8 * std::pow(r, 0.72); }, 2, 40, false);
    const FitResult pw = fit_power_law(p);
    CHECK(pw.exponent == doctest::Approx(0.72).epsilon(1e-9));
    CHECK(pw.amplitude == doctest::Approx(0.8).epsilon(1e-9));

    // Noisy growth: residual minimum beats the log-linear seed in linear space.
    Rng rng(9);
    Series noisy = sampled([&](double r) { return 2.0 * std::pow(r, 0.6) + rng.uniform() - 0.5; }, 1, 40, false);
    const FitResult fit = fit_power_law(noisy);
    CHECK(fit.converged);
    CHECK(fit.iterations <= 200);
    double rss_fit = 0.0;
    double rss_perturbed = 0.0;
    for (const Point& q : noisy.points) {
      rss_fit += std::pow(q.y - fit.amplitude * std::pow(q.r, fit.exponent), 2);
      rss_perturbed += std::pow(q.y - 1.01 * fit.amplitude * std::pow(q.r, fit.exponent), 2);
    }
    CHECK(fit.chi2_nu == doctest::Approx(rss_fit / 38).epsilon(1e-12));
    CHECK(rss_fit < rss_perturbed);

    // Negative values are fine in linear mode.
    Series neg{"neg", {{1, -1.0}, {2, 0.5}, {3, 2.0}, {4, 4.0}}, false};
    CHECK_NOTHROW(fit_exponential(neg));
  }

  TEST_CASE("input errors") {
    CHECK_THROWS_AS(fit_exponential(Series{"s", {{1, 1}, {2, 1}}, true}), Error);
    CHECK_THROWS_AS(fit_exponential(Series{"s", {{2, 1}, {2, 2}, {2, 3}}, true}), Error);
    CHECK_THROWS_AS(fit_power_law(Series{"s", {{0, 1}, {2, 2}, {3, 3}}, true}), Error);
    try {
      fit_exponential(Series{"s", {{1, 1.0}, {2, -0.5}, {3, 0.0}}, true});
      FAIL("expected an error");
    } catch (const Error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("(2, -0.5)") != std::string::npos);
      CHECK(msg.find("(3, 0)") != std::string::npos);
    }
  }

  TEST_CASE("positive_points and restrict_range") {
    const Series s{"s", {{1, 0.5}, {2, -0.1}, {3, 0.2}, {4, 0.0}, {5, 0.1}}, true};
    const SplitSeries split = positive_points(s);
    CHECK(split.kept.points.size() == 3);
    CHECK(split.excluded == std::vector<Point>{{2, -0.1}, {4, 0.0}});
    const Series r = restrict_range(s, 2, 4);
    CHECK(r.points.size() == 3);
    CHECK(r.points.front().r == 2);
  }

  TEST_CASE("select_model") {
    auto with_chi2 = [](DecayModel m, double chi2) {
      FitResult f;
      f.model = m;
      f.chi2_nu = chi2;
      f.r_values = {1, 2, 3};
      return f;
    };
    const ModelSelection pos = select_model(with_chi2(DecayModel::exponential, 0.98),
                                            with_chi2(DecayModel::power_law, 0.26));
    CHECK(pos.winner == DecayModel::power_law);
    const ModelSelection tag = select_model(with_chi2(DecayModel::exponential, 1.3),
                                            with_chi2(DecayModel::power_law, 0.11));
    CHECK(tag.winner == DecayModel::power_law);
    CHECK(tag.ratio() == doctest::Approx(1.3 / 0.11));
    const ModelSelection tie = select_model(with_chi2(DecayModel::exponential, 0.5),
                                            with_chi2(DecayModel::power_law, 0.5));
    CHECK_FALSE(tie.winner);
    CHECK_FALSE(select_model(with_chi2(DecayModel::exponential, 0.5),
                             with_chi2(DecayModel::power_law, 0.5 * (1 + 1e-12)))
                    .winner);

    FitResult other = with_chi2(DecayModel::power_law, 0.1);
    other.r_values = {1, 2, 4};
    CHECK_THROWS_AS(select_model(with_chi2(DecayModel::exponential, 0.2), other), Error);
  }
}
