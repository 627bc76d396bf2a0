#include "eprb/report.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <vector>

#include "eprb/manifest.hpp"

namespace eprb {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string("NA"); }

// Collects rows of cells and prints them either comma-separated or padded.
class Grid {
 public:
  explicit Grid(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out, OutputFormat format) const {
    if (format == OutputFormat::Csv) {
      for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
      }
      return;
    }
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << row[i];
      }
      out << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace

void write_sweep(std::ostream& out, std::span<const SweepRow> rows, OutputFormat format) {
  Grid g({"alpha_deg", "n_total", "n_coincident", "gamma_hat", "gamma_stderr", "e_conditional",
          "e_stderr", "minus_cos_alpha", "triangle", "flag"});
  for (const auto& r : rows) {
    g.add({format_number(r.alpha_deg), std::to_string(r.stats.n_total),
           std::to_string(r.stats.n_coincident), format_number(r.stats.gamma_hat),
           format_number(r.stats.stderr_gamma), opt(r.stats.e_conditional), opt(r.stats.stderr_e),
           format_number(r.singlet_reference), format_number(r.triangle_reference),
           r.flagged ? "no-coincidences" : "ok"});
  }
  g.write(out, format);
}

void write_pairs(std::ostream& out, std::span<const PairRecord> pairs, OutputFormat format) {
  Grid g({"pair", "a1_deg", "a2_deg", "n_total", "n_coincident", "gamma_hat", "gamma_stderr",
          "e_conditional", "e_stderr"});
  for (const auto& p : pairs) {
    g.add({p.label, format_number(p.a1_deg), format_number(p.a2_deg),
           std::to_string(p.stats.n_total), std::to_string(p.stats.n_coincident),
           format_number(p.stats.gamma_hat), format_number(p.stats.stderr_gamma),
           opt(p.stats.e_conditional), opt(p.stats.stderr_e)});
  }
  g.write(out, format);
}

void write_inequality(std::ostream& out, const InequalityReport& r, OutputFormat format) {
  Grid g({"quantity", "value", "stderr"});
  g.add({"chsh_lhs", format_number(r.chsh_lhs), format_number(r.chsh_lhs_stderr)});
  g.add({"gamma_min", format_number(r.gamma_min), "see pairs"});
  g.add({"modified_bound", format_number(r.modified_bound), "from gamma_min"});
  g.add({"gamma_threshold_for_lhs", format_number(r.gamma_threshold_for_lhs), "from chsh_lhs"});
  g.add({"violates_chsh", r.violates_chsh ? "true" : "false", ""});
  g.add({"violates_modified", r.violates_modified ? "true" : "false", ""});
  g.write(out, format);
}

void write_bounds(std::ostream& out, std::span<const BoundReport> bounds, OutputFormat format) {
  Grid g({"alpha_rad", "tau", "closed_form", "quadrature", "quadrature_error", "gamma_hat",
          "gamma_stderr", "satisfied"});
  for (const auto& b : bounds) {
    g.add({format_number(b.alpha), format_number(b.tau), format_number(b.closed_form),
           opt(b.quadrature), opt(b.quadrature_error), opt(b.simulated_gamma), opt(b.gamma_stderr),
           b.satisfied ? "true" : "false"});
  }
  g.write(out, format);
}

}  // namespace eprb
