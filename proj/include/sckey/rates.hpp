#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sckey/attacks.hpp"
#include "sckey/info.hpp"

namespace sckey {

enum class Bound { Lower, Upper };
enum class ClonerSource { Reference, Optimize };

struct RateCurvePoint {
  double q;
  double error_rate;
  double lower;  // I_E, bits
  double upper;  // I(A:B|E), bits
};

struct SweepConfig {
  Protocol protocol = Protocol::Trine;
  Attack attack = Attack::InterceptResend;
  std::vector<double> q_grid;  // nonempty, strictly increasing, within [0,1]
  ClonerSource cloner_source = ClonerSource::Reference;
  AnnealConfig anneal;  // used when cloner_source == Optimize
};

struct DominanceReport {
  bool lower_dominates;  // curve A >= curve B on the common error grid
  bool upper_dominates;
  std::optional<double> threshold_a;  // lower-bound tolerable error, if any
  std::optional<double> threshold_b;
};

/// A joint distribution as a function of the interception fraction.
using JointBuilder = std::function<JointDistribution(double)>;

/// The protocol's standard cast: trine signals with the inverted
/// measurement for Bob and the six-outcome both-ensembles measurement
/// for Eve, or the four Bb84 states everywhere. For the clone attack a
/// cloner must be supplied.
JointBuilder make_joint_builder(Protocol protocol, Attack attack,
                                std::optional<CloneUnitary> cloner = std::nullopt);

std::vector<double> uniform_q_grid(int points);

/// One exact rate-curve point per grid q.
std::vector<RateCurvePoint> sweep(const SweepConfig& config);
std::vector<RateCurvePoint> sweep(const JointBuilder& builder, Protocol protocol,
                                  const std::vector<double>& q_grid);

/// Bisects on q for the zero crossing of the chosen bound and returns
/// the observed error rate there; nullopt when the bound stays positive
/// on [0,1] (no zero crossing). The bound must be positive at q = 0.
std::optional<double> tolerable_error(const JointBuilder& builder,
                                      Protocol protocol, Bound bound,
                                      double tol);
std::optional<double> tolerable_error(Protocol protocol, Attack attack,
                                      Bound bound, double tol);

/// Resamples both protocols' curves onto a common error-rate grid by
/// monotone linear interpolation and checks pointwise dominance of A
/// over B per bound, within 1e-9.
DominanceReport compare(Protocol protocol_a, Protocol protocol_b, Attack attack,
                        const std::vector<double>& q_grid);

}  // namespace sckey
