#include "shapxp/shapley.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

// Per-worker partial sums: with[i][k] sums phi(S) over |S| = k, i in S;
// without[i][k] over |S| = k, i not in S.
struct Partial {
  std::vector<std::vector<Rational>> with;
  std::vector<std::vector<Rational>> without;

  explicit Partial(int m)
      : with(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m) + 1)),
        without(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m) + 1)) {}
};

void accumulate(const ExplanationProblem& problem, Backend backend, std::uint64_t begin,
                std::uint64_t end, Partial& out) {
  const int m = problem.num_features();
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    const FeatureSet s(mask);
    const Rational value = phi(problem, s, backend);
    const auto k = static_cast<std::size_t>(s.size());
    for (int i = 0; i < m; ++i) {
      auto& slot = s.contains(i) ? out.with[static_cast<std::size_t>(i)][k]
                                 : out.without[static_cast<std::size_t>(i)][k];
      slot += value;
    }
  }
}

nlohmann::json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

} // namespace

Rational phi(const ExplanationProblem& problem, FeatureSet fixed, Backend backend) {
  const Integer total =
      sum_kappa_over_cube(problem.model(), fixed, problem.instance(), backend, problem.limits());
  const std::uint64_t n = problem.space().cube_size(fixed);
  Rational q(total, Integer(static_cast<unsigned long>(n)));
  q.canonicalize();
  return q;
}

Rational coalition_weight(int num_features, int coalition_size) {
  Rational w(factorial(static_cast<unsigned>(coalition_size)) *
                 factorial(static_cast<unsigned>(num_features - coalition_size - 1)),
             factorial(static_cast<unsigned>(num_features)));
  w.canonicalize();
  return w;
}

// Sv(i) = sum_{S without i} w(|S|) (phi(S+i) - phi(S)). Regrouped by
// coalition: phi(S) enters Sv(i) with +w(|S|-1) when i is in S and with
// -w(|S|) otherwise, so each phi(S) is computed once for all features.
SvReport shapley_values(const ExplanationProblem& problem, const ShapleyOptions& options) {
  const int m = problem.num_features();
  if (m > problem.limits().max_coalition_features)
    throw CapacityError("exact Shapley values are capped at " +
                        std::to_string(problem.limits().max_coalition_features) + " features");
  const std::uint64_t coalitions = std::uint64_t{1} << m;
  const int jobs = static_cast<int>(std::clamp<std::uint64_t>(
      static_cast<std::uint64_t>(std::max(options.jobs, 1)), 1, coalitions));

  std::vector<Partial> partials(static_cast<std::size_t>(jobs), Partial(m));
  if (jobs == 1) {
    accumulate(problem, options.backend, 0, coalitions, partials[0]);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    const std::uint64_t chunk = (coalitions + static_cast<std::uint64_t>(jobs) - 1) / static_cast<std::uint64_t>(jobs);
    for (int j = 0; j < jobs; ++j) {
      const std::uint64_t begin = std::min(coalitions, chunk * static_cast<std::uint64_t>(j));
      const std::uint64_t end = std::min(coalitions, begin + chunk);
      workers.emplace_back([&, j, begin, end] {
        try {
          accumulate(problem, options.backend, begin, end, partials[static_cast<std::size_t>(j)]);
        } catch (...) {
          errors[static_cast<std::size_t>(j)] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<Rational> weight(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) weight[static_cast<std::size_t>(k)] = coalition_weight(m, k);

  SvReport report;
  report.sv.assign(static_cast<std::size_t>(m), Rational(0));
  for (int i = 0; i < m; ++i) {
    Rational& sv = report.sv[static_cast<std::size_t>(i)];
    for (const Partial& p : partials) {
      for (int k = 0; k <= m; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        if (k >= 1) sv += weight[uk - 1] * p.with[static_cast<std::size_t>(i)][uk];
        if (k <= m - 1) sv -= weight[uk] * p.without[static_cast<std::size_t>(i)][uk];
      }
    }
  }
  report.phi_empty = phi(problem, FeatureSet{}, options.backend);
  report.predicted = problem.prediction();
  report.residual = validate_efficiency(problem, report);
  return report;
}

Rational validate_efficiency(const ExplanationProblem& problem, const SvReport& report) {
  if (static_cast<int>(report.sv.size()) != problem.num_features())
    throw InputError("Shapley report does not match the problem's feature count");
  Rational residual = report.phi_empty - Rational(Integer(static_cast<long>(problem.prediction())));
  for (const Rational& s : report.sv) residual += s;
  return residual;
}

nlohmann::json rational_json(const Rational& q) {
  return {{"num", integer_json(q.get_num())},
          {"den", integer_json(q.get_den())},
          {"value", to_fraction_string(q)},
          {"decimal", to_decimal_string(q)}};
}

nlohmann::json to_json(const SvReport& report) {
  nlohmann::json sv = nlohmann::json::array();
  for (std::size_t i = 0; i < report.sv.size(); ++i) {
    nlohmann::json entry = rational_json(report.sv[i]);
    entry["feature"] = i + 1;
    sv.push_back(std::move(entry));
  }
  return {{"sv", std::move(sv)},
          {"phi_empty", rational_json(report.phi_empty)},
          {"predicted", report.predicted},
          {"residual", to_fraction_string(report.residual)}};
}

} // namespace shapxp
