#include "sckey/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace sckey {

namespace {

// Frames concatenated in order: a's states first, then b's.
Frame concatenate(const Frame& a, const Frame& b, const std::string& label) {
  CMatrix cols(a.dim(), a.size() + b.size());
  cols << a.columns(), b.columns();
  return Frame(std::move(cols), label);
}

void check_q_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("q grid must be nonempty");
  double prev = -1.0;
  for (double q : grid) {
    if (!(q >= 0.0 && q <= 1.0) || q <= prev)
      throw std::invalid_argument("q grid must be strictly increasing within [0, 1]");
    prev = q;
  }
}

CloneUnitary resolve_cloner(const SweepConfig& config) {
  if (config.cloner_source == ClonerSource::Reference) {
    if (config.protocol != Protocol::Trine)
      throw std::invalid_argument(
          "the reference cloner is specific to the trine; use the optimizer "
          "for bb84");
    return reference_trine_cloner();
  }
  Frame signal = config.protocol == Protocol::Trine ? make_trine() : make_bb84();
  return optimize_cloner(signal, config.anneal).unitary;
}

// Linear interpolation of y over strictly sorted sample abscissae x.
double interpolate(const std::vector<double>& x, const std::vector<double>& y,
                   double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  auto hi = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t i = static_cast<std::size_t>(hi - x.begin());
  const double t = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + t * (y[i] - y[i - 1]);
}

}  // namespace

JointBuilder make_joint_builder(Protocol protocol, Attack attack,
                                std::optional<CloneUnitary> cloner) {
  if (attack == Attack::Clone && !cloner)
    throw std::invalid_argument("clone attack needs a cloner");

  if (protocol == Protocol::Trine) {
    Frame signal = make_trine();
    Frame bob = dual_frame(signal);
    // Eve measures both ensembles for intercept-resend: inverted states
    // first, then the trine; for cloning she mirrors Bob's measurement.
    Frame eve = attack == Attack::InterceptResend
                    ? concatenate(bob, signal, "trine-both-ensembles")
                    : bob;
    return [signal, bob, eve, attack, cloner = std::move(cloner)](double q) {
      return attack_joint(signal, bob, eve, AttackSpec{attack, q, cloner});
    };
  }
  // the bb84 set is closed under orthogonal complement, so the
  // both-ensembles measurement collapses to the same four states
  Frame signal = make_bb84();
  return [signal, attack, cloner = std::move(cloner)](double q) {
    return attack_joint(signal, signal, signal, AttackSpec{attack, q, cloner});
  };
}

std::vector<double> uniform_q_grid(int points) {
  if (points < 1) throw std::invalid_argument("q grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(points));
  if (points == 1) {
    grid[0] = 0.0;
    return grid;
  }
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return grid;
}

std::vector<RateCurvePoint> sweep(const SweepConfig& config) {
  check_q_grid(config.q_grid);
  std::optional<CloneUnitary> cloner;
  if (config.attack == Attack::Clone) cloner = resolve_cloner(config);
  return sweep(make_joint_builder(config.protocol, config.attack, cloner),
               config.protocol, config.q_grid);
}

std::vector<RateCurvePoint> sweep(const JointBuilder& builder, Protocol protocol,
                                  const std::vector<double>& q_grid) {
  check_q_grid(q_grid);
  std::vector<RateCurvePoint> points;
  points.reserve(q_grid.size());
  for (double q : q_grid) {
    const JointDistribution joint = builder(q);
    const RateBounds rb = key_rate_bounds(joint);
    points.push_back({q, observed_error_rate(joint, protocol), rb.lower, rb.upper});
  }
  return points;
}

std::optional<double> tolerable_error(const JointBuilder& builder,
                                      Protocol protocol, Bound bound,
                                      double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerable_error: tol must be positive");
  auto value = [&](double q) {
    const RateBounds rb = key_rate_bounds(builder(q));
    return bound == Bound::Lower ? rb.lower : rb.upper;
  };
  if (value(0.0) <= 0.0)
    throw std::invalid_argument("tolerable_error: bound is not positive at q = 0");
  if (value(1.0) > 1e-12) return std::nullopt;  // stays positive: no zero crossing

  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) > 0.0 ? lo : hi) = mid;
  }
  return observed_error_rate(builder(0.5 * (lo + hi)), protocol);
}

std::optional<double> tolerable_error(Protocol protocol, Attack attack,
                                      Bound bound, double tol) {
  std::optional<CloneUnitary> cloner;
  if (attack == Attack::Clone)
    cloner = protocol == Protocol::Trine
                 ? reference_trine_cloner()
                 : optimize_cloner(make_bb84(), AnnealConfig{}).unitary;
  return tolerable_error(make_joint_builder(protocol, attack, cloner), protocol,
                         bound, tol);
}

DominanceReport compare(Protocol protocol_a, Protocol protocol_b, Attack attack,
                        const std::vector<double>& q_grid) {
  check_q_grid(q_grid);
  auto run = [&](Protocol p) {
    SweepConfig cfg;
    cfg.protocol = p;
    cfg.attack = attack;
    cfg.q_grid = q_grid;
    if (attack == Attack::Clone && p == Protocol::Bb84)
      cfg.cloner_source = ClonerSource::Optimize;
    return sweep(cfg);
  };
  const auto curve_a = run(protocol_a);
  const auto curve_b = run(protocol_b);

  auto split = [](const std::vector<RateCurvePoint>& c) {
    std::vector<double> e, lo, up;
    for (const auto& pt : c) {
      e.push_back(pt.error_rate);
      lo.push_back(pt.lower);
      up.push_back(pt.upper);
    }
    return std::tuple{e, lo, up};
  };
  const auto [ea, la, ua] = split(curve_a);
  const auto [eb, lb, ub] = split(curve_b);

  // common error grid spans the overlap of both curves' ranges
  const double e_max = std::min(ea.back(), eb.back());
  const std::size_t n = q_grid.size();
  bool lower_ok = true, upper_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = n == 1 ? 0.0 : e_max * static_cast<double>(i) / static_cast<double>(n - 1);
    if (interpolate(ea, la, e) < interpolate(eb, lb, e) - 1e-9) lower_ok = false;
    if (interpolate(ea, ua, e) < interpolate(eb, ub, e) - 1e-9) upper_ok = false;
  }

  auto threshold = [&](Protocol p) {
    std::optional<CloneUnitary> cloner;
    if (attack == Attack::Clone)
      cloner = p == Protocol::Trine
                   ? reference_trine_cloner()
                   : optimize_cloner(make_bb84(), AnnealConfig{}).unitary;
    return tolerable_error(make_joint_builder(p, attack, cloner), p, Bound::Lower, 1e-6);
  };
  return DominanceReport{lower_ok, upper_ok, threshold(protocol_a), threshold(protocol_b)};
}

}  // namespace sckey
