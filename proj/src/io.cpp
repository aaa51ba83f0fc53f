#include "sckey/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sckey {

namespace {

// shortest representation that round-trips a double
std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string significant(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

std::string protocol_name(Protocol protocol) {
  return protocol == Protocol::Trine ? "trine" : "bb84";
}

std::string attack_name(Attack attack) {
  return attack == Attack::InterceptResend ? "intercept-resend" : "clone";
}

void write_matrix(std::ostream& os, const CMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << full_precision(m(i, j).real()) << ',' << full_precision(m(i, j).imag());
    }
    os << '\n';
  }
}

void write_frame(std::ostream& os, const Frame& frame) {
  // one state per line
  write_matrix(os, frame.columns().transpose());
}

CMatrix read_matrix(std::istream& is) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<Complex> row;
    std::string token;
    while (ls >> token) {
      double re = 0.0, im = 0.0;
      if (std::sscanf(token.c_str(), "%lf,%lf", &re, &im) != 2)
        throw std::runtime_error("read_matrix: malformed entry '" + token + "'");
      row.emplace_back(re, im);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("read_matrix: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("read_matrix: empty input");
  CMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void write_sweep_csv(std::ostream& os, Protocol protocol, Attack attack,
                     const std::vector<RateCurvePoint>& points) {
  os << "protocol,attack,q,error_rate,rate_lower,rate_upper\n";
  const std::string prefix = protocol_name(protocol) + "," + attack_name(attack) + ",";
  for (const auto& pt : points)
    os << prefix << significant(pt.q, 12) << ',' << significant(pt.error_rate, 12)
       << ',' << significant(pt.lower, 12) << ',' << significant(pt.upper, 12) << '\n';
}

void write_joint_csv(std::ostream& os, const JointDistribution& joint) {
  os << "a,b,e,p\n";
  for (Index a = 0; a < joint.size_a(); ++a)
    for (Index b = 0; b < joint.size_b(); ++b)
      for (Index e = 0; e < joint.size_e(); ++e)
        os << a << ',' << b << ',' << e << ',' << significant(joint(a, b, e), 12) << '\n';
}

}  // namespace sckey
