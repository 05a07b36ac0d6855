#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subw/core.hpp"
#include "subw/rng.hpp"

namespace subw {

// A finite sequence of real draws plus provenance (generator, parameters,
// stream) so every downstream figure can name the exact stream it came from.
struct SampleSet {
  std::vector<double> values;
  std::string generator;  // e.g. "weibull(theta=1,lambda=1)"
  RngStream stream;

  std::size_t n() const { return values.size(); }
};

SampleSet sample_weibull(std::size_t n, const TailParams& p, const RngStream& rng);
SampleSet sample_symmetric_subweibull(std::size_t n, double theta, const RngStream& rng,
                                      double cut = 0.95);
SampleSet sample_gaussian(std::size_t n, double mean, double std, const RngStream& rng);
SampleSet sample_uniform(std::size_t n, double lo, double hi, const RngStream& rng);

// Single-column CSV: one '#' provenance comment line, a "value" header, then
// one shortest-round-trip double per line (LF endings).
void write_sample_csv(std::ostream& out, const SampleSet& s);

// Reads the single-column format back (comment lines and a non-numeric header
// are skipped). Throws DomainError on malformed rows or if no data rows remain.
std::vector<double> read_sample_csv(std::istream& in);

}  // namespace subw
