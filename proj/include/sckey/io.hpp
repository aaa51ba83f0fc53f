#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sckey/frames.hpp"
#include "sckey/info.hpp"
#include "sckey/rates.hpp"
#include "sckey/types.hpp"

namespace sckey {

std::string protocol_name(Protocol protocol);
std::string attack_name(Attack attack);

/// Plain-text matrix format: one row per line, entries as "re,im" pairs
/// separated by single spaces. A frame writes one state per line.
void write_matrix(std::ostream& os, const CMatrix& m);
void write_frame(std::ostream& os, const Frame& frame);
CMatrix read_matrix(std::istream& is);

/// Sweep CSV: header protocol,attack,q,error_rate,rate_lower,rate_upper,
/// floats with 12 significant digits.
void write_sweep_csv(std::ostream& os, Protocol protocol, Attack attack,
                     const std::vector<RateCurvePoint>& points);

/// Joint table CSV with columns a,b,e,p.
void write_joint_csv(std::ostream& os, const JointDistribution& joint);

}  // namespace sckey
