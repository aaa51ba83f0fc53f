#include "sckey/info.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sckey {

namespace {

// -sum w log2 w over the positive entries; callers guarantee normalization.
double entropy_unchecked(const Eigen::Ref<const Eigen::ArrayXd>& w) {
  double h = 0.0;
  for (Index i = 0; i < w.size(); ++i)
    if (w(i) > 0.0) h -= w(i) * std::log2(w(i));
  return h;
}

double entropy_of_matrix(const RMatrix& m) {
  return entropy_unchecked(Eigen::Map<const Eigen::ArrayXd>(m.data(), m.size()));
}

}  // namespace

JointDistribution::JointDistribution(Index na, Index nb, Index ne, Eigen::ArrayXd probs)
    : na_(na), nb_(nb), ne_(ne), p_(std::move(probs)) {
  if (na_ < 1 || nb_ < 1 || ne_ < 1 || p_.size() != na_ * nb_ * ne_)
    throw std::invalid_argument("JointDistribution: table size mismatch");
  if ((p_ < 0.0).any())
    throw std::invalid_argument("JointDistribution: negative probability");
  if (std::abs(p_.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("JointDistribution: probabilities do not sum to 1");
}

RVector JointDistribution::marginal_a() const {
  RVector out = RVector::Zero(na_);
  for (Index a = 0; a < na_; ++a)
    out(a) = p_.segment(a * nb_ * ne_, nb_ * ne_).sum();
  return out;
}

RVector JointDistribution::marginal_b() const {
  RVector out = RVector::Zero(nb_);
  for (Index a = 0; a < na_; ++a)
    for (Index b = 0; b < nb_; ++b)
      out(b) += p_.segment((a * nb_ + b) * ne_, ne_).sum();
  return out;
}

RVector JointDistribution::marginal_e() const {
  RVector out = RVector::Zero(ne_);
  for (Index a = 0; a < na_; ++a)
    for (Index b = 0; b < nb_; ++b)
      for (Index e = 0; e < ne_; ++e) out(e) += (*this)(a, b, e);
  return out;
}

RMatrix JointDistribution::marginal_ab() const {
  RMatrix out = RMatrix::Zero(na_, nb_);
  for (Index a = 0; a < na_; ++a)
    for (Index b = 0; b < nb_; ++b)
      out(a, b) = p_.segment((a * nb_ + b) * ne_, ne_).sum();
  return out;
}

RMatrix JointDistribution::marginal_ae() const {
  RMatrix out = RMatrix::Zero(na_, ne_);
  for (Index a = 0; a < na_; ++a)
    for (Index b = 0; b < nb_; ++b)
      for (Index e = 0; e < ne_; ++e) out(a, e) += (*this)(a, b, e);
  return out;
}

RMatrix JointDistribution::marginal_be() const {
  RMatrix out = RMatrix::Zero(nb_, ne_);
  for (Index a = 0; a < na_; ++a)
    for (Index b = 0; b < nb_; ++b)
      for (Index e = 0; e < ne_; ++e) out(b, e) += (*this)(a, b, e);
  return out;
}

double entropy(const Eigen::Ref<const RVector>& weights) {
  if ((weights.array() < 0.0).any())
    throw std::invalid_argument("entropy: negative weight");
  if (std::abs(weights.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("entropy: weights do not sum to 1");
  return entropy_unchecked(weights.array());
}

double mutual_information(const JointDistribution& joint, Var x, Var y) {
  if (x == y) throw std::invalid_argument("mutual_information: need two distinct variables");
  auto canonical = [&](Var a, Var b) -> RMatrix {
    if (a == Var::A && b == Var::B) return joint.marginal_ab();
    if (a == Var::A && b == Var::E) return joint.marginal_ae();
    return joint.marginal_be();  // a == Var::B && b == Var::E
  };
  const RMatrix m = x < y ? canonical(x, y) : RMatrix(canonical(y, x).transpose());
  const double hx = entropy_unchecked(m.rowwise().sum().array());
  const double hy = entropy_unchecked(m.colwise().sum().transpose().array());
  return hx + hy - entropy_of_matrix(m);
}

double conditional_mutual_information(const JointDistribution& joint) {
  double total = 0.0;
  for (Index e = 0; e < joint.size_e(); ++e) {
    RMatrix slice(joint.size_a(), joint.size_b());
    for (Index a = 0; a < joint.size_a(); ++a)
      for (Index b = 0; b < joint.size_b(); ++b) slice(a, b) = joint(a, b, e);
    const double pe = slice.sum();
    if (pe <= 0.0) continue;
    slice /= pe;
    total += pe * (entropy_unchecked(slice.rowwise().sum().array()) +
                   entropy_unchecked(slice.colwise().sum().transpose().array()) -
                   entropy_of_matrix(slice));
  }
  return total;
}

RateBounds key_rate_bounds(const JointDistribution& joint) {
  RateBounds rb{};
  rb.i_ab = mutual_information(joint, Var::A, Var::B);
  rb.i_ae = mutual_information(joint, Var::A, Var::E);
  rb.i_be = mutual_information(joint, Var::B, Var::E);
  rb.i_ab_given_e = conditional_mutual_information(joint);
  rb.lower = rb.i_ab - std::min(rb.i_ae, rb.i_be);
  rb.upper = rb.i_ab_given_e;
  return rb;
}

double observed_error_rate(const JointDistribution& joint, Protocol protocol) {
  const RMatrix ab = joint.marginal_ab();
  switch (protocol) {
    case Protocol::Trine: {
      if (joint.size_a() != joint.size_b())
        throw std::invalid_argument("observed_error_rate: trine needs square (a,b) table");
      return ab.diagonal().sum();
    }
    case Protocol::Bb84: {
      if (joint.size_a() != 4 || joint.size_b() != 4)
        throw std::invalid_argument("observed_error_rate: bb84 needs 4x4 (a,b) table");
      // orthogonal pairs in the fixed ordering |0>,|1>,|+>,|->
      return ab(0, 1) + ab(1, 0) + ab(2, 3) + ab(3, 2);
    }
  }
  throw std::invalid_argument("observed_error_rate: unknown protocol");
}

}  // namespace sckey
