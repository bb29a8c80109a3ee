#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbslab/boundary.hpp"
#include "vbslab/two_site.hpp"

namespace vbslab {

enum class Command { tables, entropy_scan, compare_xx, verify };
enum class OutputFormat { csv, json, markdown };
enum class Verdict { match, mismatch, published_inconsistency };

const char* to_string(Verdict v);
const char* to_string(OutputFormat f);

/// Default per-command tolerances.
inline constexpr double kTableTolerance = 5e-6;  // on the x9 scale
inline constexpr double kVerifyTolerance = 1e-10;

struct RunConfig {
  Command command = Command::tables;
  std::optional<BoundaryDistance> left;   ///< per-command default when unset
  std::optional<BoundaryDistance> right;
  Sign sign_left = Sign::plus;
  Sign sign_right = Sign::plus;
  long long l_min = 1;
  long long l_max = 20;
  double exponent_k = 1.0;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;               ///< empty = stdout
  std::optional<double> tolerance;    ///< per-command default when unset

  /// Throws std::invalid_argument for empty ranges or non-positive tolerances.
  void validate() const;
  double effective_tolerance() const;
};

using Record = nlohmann::ordered_json;

/// One published value against the computed one.
struct DiscrepancyRecord {
  std::string claim;
  Record inputs = Record::object();
  double published_value = 0.0;
  double computed_value = 0.0;
  double abs_difference = 0.0;
  Verdict verdict = Verdict::match;
  std::string provenance = "analytic";

  Record to_json() const;
};

/// Published nearest-neighbour tables, scaled by 9. Rows N_l, columns N_r,
/// both in the order 1, 2, 3, 4, inf.
using PublishedTable = std::array<std::array<double, 5>, 5>;
const PublishedTable& published_negativity_table();
const PublishedTable& published_realignment_table();

/// Compares a computed table with a published one. A mismatching cell whose
/// computed value reproduces the published mirror cell (N_r, N_l) is
/// classified as a published inconsistency rather than a mismatch.
std::vector<DiscrepancyRecord> compare_table(const PairTable& table, const PublishedTable& published,
                                             const std::string& claim_prefix, double tolerance);

struct CommandResult {
  std::vector<Record> records;
  bool passed = true;
  /// Markdown rendering when the command has a layout of its own.
  std::optional<std::string> markdown;
};

CommandResult run_tables(const RunConfig& config);
CommandResult run_entropy_scan(const RunConfig& config);
CommandResult run_compare_xx(const RunConfig& config);
CommandResult run_verify(const RunConfig& config);

/// Findings about published formulas; emitted by `verify`, never failing it.
Record first_order_entropy_finding();
Record first_order_lambda_finding();
Record decay_window_finding();
Record log_constant_finding();
Record relative_sign_finding();

std::string render(const std::vector<Record>& records, OutputFormat format);

/// Full double precision, shortest round-trip form.
std::string format_double(double value);

/// Dispatches, renders and writes. Exit codes: 0 ok, 1 failure (including
/// unwritable output), 2 usage error.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace vbslab
