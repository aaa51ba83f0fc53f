#include "sckey/attacks.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace sckey {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kSymmetricTol = 1e-6;

void check_fraction(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("interception fraction must lie in [0, 1]");
}

void check_measurement_frame(const Frame& frame, const char* who) {
  if (identity_resolution_residual(frame) > kIdentityTol)
    throw std::invalid_argument(std::string(who) +
                                " frame does not resolve the identity");
}

// |phi> (x) |0> with a probe of the same dimension as the signal.
CVector with_fresh_probe(const CVector& signal) {
  CVector probe = CVector::Zero(signal.size());
  probe(0) = 1.0;
  return kron(signal, probe);
}

// Squared clone overlap |<phi_j,phi_j|U|phi_j,0>|^2 per signal state.
RVector clone_overlaps(const CloneUnitary& cloner, const Frame& signal) {
  const Index d = signal.dim();
  if (cloner.dim() != d * d)
    throw std::invalid_argument("cloner dimension must be dim(signal)^2");
  RVector out(signal.size());
  for (Index j = 0; j < signal.size(); ++j) {
    const CVector in = cloner.matrix() * with_fresh_probe(signal.state(j));
    out(j) = overlap_sq(kron(signal.state(j), signal.state(j)), in);
  }
  return out;
}

// 4x4 anti-Hermitian exponential: x packs a Hermitian H (4 diagonal reals,
// then re/im per upper off-diagonal), U = exp(iH). Fixed-size types keep
// this cheap enough for the annealer's inner loop.
Eigen::Matrix4cd unitary_from_params(const std::array<double, 16>& x) {
  Eigen::Matrix4cd h;
  std::size_t idx = 0;
  for (Index i = 0; i < 4; ++i) h(i, i) = x[idx++];
  for (Index i = 0; i < 4; ++i)
    for (Index j = i + 1; j < 4; ++j) {
      h(i, j) = Complex(x[idx], x[idx + 1]);
      h(j, i) = std::conj(h(i, j));
      idx += 2;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  Eigen::Vector4cd phases;
  for (Index i = 0; i < 4; ++i)
    phases(i) = std::polar(1.0, es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct ObjectiveValue {
  double value;     // fidelity - weight * penalty
  double fidelity;
  double penalty;
};

// Clone targets |phi_j,phi_j> and inputs |phi_j,0> frozen up front so an
// objective evaluation is one 4x4 exponential plus a few dot products.
struct CloneObjective {
  std::vector<Eigen::Vector4cd> targets, inputs;
  double weight;

  CloneObjective(const Frame& signal, double penalty_weight) : weight(penalty_weight) {
    for (Index j = 0; j < signal.size(); ++j) {
      targets.emplace_back(kron(signal.state(j), signal.state(j)));
      inputs.emplace_back(with_fresh_probe(signal.state(j)));
    }
  }

  ObjectiveValue operator()(const std::array<double, 16>& x) const {
    const Eigen::Matrix4cd u = unitary_from_params(x);
    double mean = 0.0, sq = 0.0;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const double ov = std::norm(Complex(targets[j].dot(u * inputs[j])));
      mean += ov;
      sq += ov * ov;
    }
    const double n = static_cast<double>(targets.size());
    mean /= n;
    const double var = std::max(sq / n - mean * mean, 0.0);
    return {mean - weight * var, mean, var};
  }
};

}  // namespace

CloneUnitary::CloneUnitary(CMatrix entries) : u_(std::move(entries)) {
  if (u_.rows() != u_.cols() || u_.rows() < 1)
    throw std::invalid_argument("CloneUnitary: not square");
  CMatrix r = u_.adjoint() * u_ - CMatrix::Identity(u_.rows(), u_.cols());
  if (r.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("CloneUnitary: matrix is not unitary");
}

JointDistribution intercept_resend_joint(const Frame& signal, const Frame& bob,
                                         const Frame& eve, double q) {
  check_fraction(q);
  const Index d = signal.dim();
  if (bob.dim() != d || eve.dim() != d)
    throw std::invalid_argument("intercept_resend_joint: frame dimension mismatch");
  check_measurement_frame(signal, "signal");
  check_measurement_frame(bob, "bob");
  check_measurement_frame(eve, "eve");

  const Index ns = signal.size(), nb = bob.size(), ne = eve.size();
  const double prior = 1.0 / static_cast<double>(ns);
  const double wb = static_cast<double>(d) / static_cast<double>(nb);
  const double we = static_cast<double>(d) / static_cast<double>(ne);
  const bool extra = q < 1.0;  // distinguished no-intercept symbol
  const Index ne_out = ne + (extra ? 1 : 0);

  Eigen::ArrayXd p = Eigen::ArrayXd::Zero(ns * nb * ne_out);
  auto at = [&](Index a, Index b, Index e) -> double& {
    return p((a * nb + b) * ne_out + e);
  };
  for (Index i = 0; i < ns; ++i) {
    for (Index k = 0; k < ne; ++k) {
      const double p_int = we * overlap_sq(eve.state(k), signal.state(i));
      for (Index j = 0; j < nb; ++j)
        at(i, j, k) = prior * q * p_int * wb * overlap_sq(bob.state(j), eve.state(k));
    }
    if (extra)
      for (Index j = 0; j < nb; ++j)
        at(i, j, ne) = prior * (1.0 - q) * wb * overlap_sq(bob.state(j), signal.state(i));
  }
  return JointDistribution(ns, nb, ne_out, std::move(p));
}

JointDistribution clone_joint(const Frame& signal, const Frame& bob,
                              const Frame& eve, const CloneUnitary& cloner,
                              double q) {
  check_fraction(q);
  const Index d = signal.dim();
  if (bob.dim() != d || eve.dim() != d)
    throw std::invalid_argument("clone_joint: frame dimension mismatch");
  if (cloner.dim() != d * d)
    throw std::invalid_argument("clone_joint: cloner dimension must be dim^2");
  check_measurement_frame(bob, "bob");
  check_measurement_frame(eve, "eve");

  const Index ns = signal.size(), nb = bob.size(), ne = eve.size();
  const double scale = (1.0 / static_cast<double>(ns)) *
                       (static_cast<double>(d) / static_cast<double>(nb)) *
                       (static_cast<double>(d) / static_cast<double>(ne));
  Eigen::ArrayXd p(ns * nb * ne);
  for (Index i = 0; i < ns; ++i) {
    const CVector untouched = with_fresh_probe(signal.state(i));
    const CVector cloned = cloner.matrix() * untouched;
    for (Index j = 0; j < nb; ++j)
      for (Index k = 0; k < ne; ++k) {
        const CVector meas = kron(bob.state(j), eve.state(k));
        p((i * nb + j) * ne + k) =
            scale * (q * overlap_sq(meas, cloned) +
                     (1.0 - q) * overlap_sq(meas, untouched));
      }
  }
  return JointDistribution(ns, nb, ne, std::move(p));
}

JointDistribution attack_joint(const Frame& signal, const Frame& bob,
                               const Frame& eve, const AttackSpec& spec) {
  if (spec.kind == Attack::InterceptResend)
    return intercept_resend_joint(signal, bob, eve, spec.q);
  if (!spec.cloner)
    throw std::invalid_argument("attack_joint: the clone attack needs a cloner");
  return clone_joint(signal, bob, eve, *spec.cloner, spec.q);
}

CloneUnitary reference_trine_cloner() {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix u = CMatrix::Zero(4, 4);
  u(0, 3) = 1.0;
  u(1, 0) = r;
  u(1, 1) = r;
  u(2, 0) = r;
  u(2, 1) = -r;
  u(3, 2) = 1.0;
  return CloneUnitary(std::move(u));
}

double average_clone_fidelity(const CloneUnitary& cloner, const Frame& signal) {
  return clone_overlaps(cloner, signal).mean();
}

double clone_symmetry_penalty(const CloneUnitary& cloner, const Frame& signal) {
  const RVector ov = clone_overlaps(cloner, signal);
  return (ov.array() - ov.mean()).square().mean();
}

double single_clone_fidelity(const CloneUnitary& cloner, const Frame& signal) {
  const Index d = signal.dim();
  if (cloner.dim() != d * d)
    throw std::invalid_argument("cloner dimension must be dim(signal)^2");
  double total = 0.0;
  for (Index j = 0; j < signal.size(); ++j) {
    const CVector out = cloner.matrix() * with_fresh_probe(signal.state(j));
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        m(out.data(), d, d);  // rows index the signal half
    const CVector phi = signal.state(j);
    total += std::real(Complex(phi.dot((m * m.adjoint()) * phi)));
  }
  return total / static_cast<double>(signal.size());
}

CloneOptResult optimize_cloner(const Frame& signal, const AnnealConfig& config) {
  if (signal.dim() != 2)
    throw std::invalid_argument("optimize_cloner: qubit signals only");
  if (config.steps < 1 || config.restarts < 1 || config.temp_initial <= 0.0 ||
      config.penalty_weight < 0.0 || config.cooling <= 0.0 || config.cooling >= 1.0)
    throw std::invalid_argument("optimize_cloner: invalid anneal configuration");

  const CloneObjective objective(signal, config.penalty_weight);
  std::array<double, 16> best_x{};
  double best_value = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < config.restarts; ++r) {
    std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 15);

    std::array<double, 16> x{};
    if (r > 0)
      for (auto& v : x) v = gauss(rng);
    double current = objective(x).value;
    if (current > best_value) {
      best_value = current;
      best_x = x;
    }

    double temp = config.temp_initial;
    for (int step = 0; step < config.steps; ++step) {
      const int c = pick(rng);
      std::array<double, 16> candidate = x;
      candidate[static_cast<std::size_t>(c)] += gauss(rng) * config.step_scale * temp;
      const double value = objective(candidate).value;
      const double delta = value - current;
      if (delta >= 0.0 || unif(rng) < std::exp(delta / temp)) {
        x = candidate;
        current = value;
        if (current > best_value) {
          best_value = current;
          best_x = x;
        }
      }
      temp *= config.cooling;
    }
  }

  // report fidelity and penalty through the same public routes callers use
  CloneUnitary best(CMatrix(unitary_from_params(best_x)));
  const double fidelity = average_clone_fidelity(best, signal);
  const double penalty = clone_symmetry_penalty(best, signal);
  return CloneOptResult{std::move(best), fidelity, penalty, penalty < kSymmetricTol};
}

std::vector<StateVector> bb84_reference_clone_states() {
  const double s2 = std::sqrt(2.0);
  CVector plus(4), minus(4);
  plus << (2.0 + s2) / 4.0, Complex(0.0, -s2 / 4.0), Complex(0.0, -s2 / 4.0), (2.0 - s2) / 4.0;
  minus << (2.0 - s2) / 4.0, Complex(0.0, s2 / 4.0), Complex(0.0, s2 / 4.0), (2.0 + s2) / 4.0;
  CVector sum = plus + minus;
  CVector diff = plus - minus;
  sum /= sum.norm();
  diff /= diff.norm();
  return {StateVector(plus), StateVector(minus), StateVector(sum), StateVector(diff)};
}

}  // namespace sckey
