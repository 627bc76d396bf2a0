#pragma once

// Plot-ready CSV and aligned text tables. Every estimate is written next to
// its standard error or quadrature error estimate. Numbers are formatted
// with std::to_chars, so output does not depend on the C locale.

#include <ostream>
#include <span>
#include <string>

#include "eprb/experiment.hpp"

namespace eprb {

enum class OutputFormat { Csv, Table };

void write_sweep(std::ostream& out, std::span<const SweepRow> rows, OutputFormat format);
void write_pairs(std::ostream& out, std::span<const PairRecord> pairs, OutputFormat format);
void write_inequality(std::ostream& out, const InequalityReport& report, OutputFormat format);
void write_bounds(std::ostream& out, std::span<const BoundReport> bounds, OutputFormat format);

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace eprb
