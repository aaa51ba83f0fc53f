#pragma once

#include "sckey/types.hpp"

namespace sckey {

/// Dense joint probability table p(a,b,e) over three finite alphabets.
/// Entries are nonnegative and sum to 1 within 1e-10.
class JointDistribution {
 public:
  JointDistribution(Index na, Index nb, Index ne, Eigen::ArrayXd probs);

  Index size_a() const { return na_; }
  Index size_b() const { return nb_; }
  Index size_e() const { return ne_; }
  const Eigen::ArrayXd& probs() const { return p_; }

  double operator()(Index a, Index b, Index e) const {
    return p_((a * nb_ + b) * ne_ + e);
  }

  RVector marginal_a() const;
  RVector marginal_b() const;
  RVector marginal_e() const;
  RMatrix marginal_ab() const;
  RMatrix marginal_ae() const;
  RMatrix marginal_be() const;

 private:
  Index na_, nb_, ne_;
  Eigen::ArrayXd p_;  // flattened, index (a*nb + b)*ne + e
};

enum class Var { A, B, E };

enum class Protocol { Trine, Bb84 };

struct RateBounds {
  double i_ab;          // I(A:B), bits
  double i_ae;          // I(A:E)
  double i_be;          // I(B:E)
  double i_ab_given_e;  // I(A:B|E)
  double lower;         // I(A:B) - min(I(A:E), I(B:E))
  double upper;         // I(A:B|E)
};

/// Shannon entropy -sum w log2(w) in bits, with 0 log 0 = 0. Rejects
/// negative weights and weights not summing to 1 within 1e-9.
double entropy(const Eigen::Ref<const RVector>& weights);

/// Mutual information of two of the three variables after marginalizing
/// out the third, H(X) + H(Y) - H(XY), in bits.
double mutual_information(const JointDistribution& joint, Var x, Var y);

/// sum_e p(e) I(A:B|E=e) in bits; zero-probability slices contribute 0.
double conditional_mutual_information(const JointDistribution& joint);

RateBounds key_rate_bounds(const JointDistribution& joint);

/// The error rate Alice and Bob observe when comparing samples. Trine:
/// p(b = a), Bob's exclusion outcome naming the actual signal. Bb84:
/// probability that Bob's outcome state is orthogonal to the signal
/// (same-basis bit flips). Both vanish without eavesdropping.
double observed_error_rate(const JointDistribution& joint, Protocol protocol);

}  // namespace sckey
