#pragma once

#include "fequiv/grid.hpp"
#include "fequiv/random_effects.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace fequiv {

/// Shortest decimal that round-trips, '.' separator, independent of locale.
std::string format_double(double x);
/// Strict locale-independent parse of a whole field; throws InvalidArgumentError.
double parse_double(std::string_view field);

// Functional sample CSV: line 1 holds the grid points t_1..t_p, every further
// line one curve's values at those points. Comma separated, no quoting.

void write_sample_csv(std::ostream& out, const FunctionalSample& sample);
FunctionalSample read_sample_csv(std::istream& in, const std::string& name = "<stream>");
FunctionalSample read_sample_csv(const std::string& path);
void write_sample_csv(const std::string& path, const FunctionalSample& sample);

// Paired random-effects CSV: line 1 is `device,group,index,t_1,...,t_p`;
// every further line is `device,group,index,v_1,...,v_p` with device in
// {1,2}, 1-based group and index. Each (group, index) must appear once per
// device; groups are numbered 1..A and indices 1..n_i without gaps. The
// writer emits group by group, index by index, device 1 before device 2.

void write_paired_csv(std::ostream& out, const PairedRESample& data);
PairedRESample read_paired_csv(std::istream& in, const std::string& name = "<stream>");
PairedRESample read_paired_csv(const std::string& path);
void write_paired_csv(const std::string& path, const PairedRESample& data);

}  // namespace fequiv
