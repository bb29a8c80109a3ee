#include "vbslab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vbslab/block_entropy.hpp"
#include "vbslab/fock_oracle.hpp"

namespace vbslab {

namespace {

constexpr int kGridMax = 4;  // finite boundary grid {1..4}

std::string sign_string(Sign s) { return std::string(1, to_char(s)); }

Record config_inputs(const BoundaryConfig& c) {
  Record r = Record::object();
  r["N_l"] = c.left.to_string();
  r["N_r"] = c.right.to_string();
  r["sign_l"] = sign_string(c.sign_left);
  r["sign_r"] = sign_string(c.sign_right);
  return r;
}

std::vector<BoundaryConfig> finite_grid(Sign sl, Sign sr, int max_distance = kGridMax) {
  std::vector<BoundaryConfig> out;
  for (int nl = 1; nl <= max_distance; ++nl)
    for (int nr = 1; nr <= max_distance; ++nr) out.push_back({BoundaryDistance(nl), BoundaryDistance(nr), sl, sr});
  return out;
}

constexpr std::array<std::pair<Sign, Sign>, 4> kAllSigns = {
    {{Sign::plus, Sign::plus}, {Sign::plus, Sign::minus}, {Sign::minus, Sign::plus}, {Sign::minus, Sign::minus}}};

/// Canonical orientation: the published V_l, V_r pair.
BoundaryConfig canonical(int nl, int nr) {
  return {BoundaryDistance(nl), BoundaryDistance(nr), Sign::plus, Sign::minus};
}

Record check_record(const std::string& claim, Record inputs, double value, double threshold, bool ok,
                    const std::string& provenance) {
  Record r = Record::object();
  r["claim"] = claim;
  r["kind"] = "check";
  r["inputs"] = std::move(inputs);
  r["value"] = value;
  r["threshold"] = threshold;
  r["verdict"] = to_string(ok ? Verdict::match : Verdict::mismatch);
  r["provenance"] = provenance;
  return r;
}

/// Tracks the worst case of a family of checks so each family emits one record.
struct Worst {
  double value = 0.0;
  Record inputs = Record::object();
  void update(double v, const Record& in) {
    if (v > value || inputs.empty()) {
      value = std::max(v, value);
      inputs = in;
    }
  }
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const Record& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  return v.dump();
}

void flatten(const Record& r, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  for (const auto& [key, value] : r.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object())
      flatten(value, name, out);
    else
      out.emplace_back(name, scalar_text(value));
  }
}

std::string fixed5(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(5) << v;
  return os.str();
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::published_inconsistency: return "paper-internal-inconsistency";
  }
  return "?";
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::markdown: return "markdown";
  }
  return "?";
}

void RunConfig::validate() const {
  if (l_min < 1) throw std::invalid_argument("--lmin must be >= 1");
  if (l_max < l_min) throw std::invalid_argument("--lmax must be >= --lmin");
  if (tolerance && !(*tolerance > 0.0)) throw std::invalid_argument("--tol must be > 0");
  if (!(exponent_k > 0.0)) throw std::invalid_argument("--k must be > 0");
  if (command == Command::compare_xx && l_max > 100000)
    throw std::invalid_argument("compare-xx: --lmax too large");
}

double RunConfig::effective_tolerance() const {
  if (tolerance) return *tolerance;
  return command == Command::tables ? kTableTolerance : kVerifyTolerance;
}

Record DiscrepancyRecord::to_json() const {
  Record r = Record::object();
  r["claim"] = claim;
  r["inputs"] = inputs;
  r["value"] = computed_value;
  r["paper_value"] = published_value;
  r["difference"] = abs_difference;
  r["verdict"] = to_string(verdict);
  r["provenance"] = provenance;
  return r;
}

const PublishedTable& published_negativity_table() {
  static const PublishedTable table = {{
      {1.45919, 1.50111, 1.43456, 1.45142, 1.44170},
      {1.50111, 1.05433, 1.15504, 1.11552, 1.12486},
      {1.43456, 1.15504, 1.00609, 1.05018, 1.03861},
      {1.45142, 1.11552, 1.05018, 1.00068, 1.01252},
      {1.44670, 1.12486, 1.03861, 1.01252, 1.0},
  }};
  return table;
}

const PublishedTable& published_realignment_table() {
  static const PublishedTable table = {{
      {0.37393, 0.23445, 0.19692, 0.20032, 0.19861},
      {0.23445, 0.03974, 0.02631, 0.02194, 0.02221},
      {0.19692, 0.02631, 0.00439, 0.00293, 0.00247},
      {0.20032, 0.02194, 0.00293, 0.00049, 0.00027},
      {0.19861, 0.02221, 0.00247, 0.00027, 0.0},
  }};
  return table;
}

std::vector<DiscrepancyRecord> compare_table(const PairTable& table, const PublishedTable& published,
                                             const std::string& claim_prefix, double tolerance) {
  if (table.cells.size() != published.size())
    throw std::invalid_argument("compare_table: table shape differs from the published layout");
  std::vector<DiscrepancyRecord> out;
  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    for (std::size_t j = 0; j < table.cells[i].size(); ++j) {
      const TableCell& cell = table.at(i, j);
      DiscrepancyRecord rec;
      rec.claim = claim_prefix + "[N_l=" + cell.left.to_string() + ",N_r=" + cell.right.to_string() + "]";
      rec.inputs["measure"] = to_string(table.measure);
      rec.inputs["N_l"] = cell.left.to_string();
      rec.inputs["N_r"] = cell.right.to_string();
      rec.inputs["L"] = 2;
      rec.inputs["scale"] = 9;
      rec.published_value = published[i][j];
      rec.computed_value = cell.value_x9;
      rec.abs_difference = std::abs(cell.value_x9 - published[i][j]);
      rec.provenance = to_string(cell.provenance);
      if (rec.abs_difference <= tolerance) {
        rec.verdict = Verdict::match;
      } else {
        const double mirror = published[j][i];
        const bool mirror_differs = std::abs(mirror - published[i][j]) > tolerance;
        rec.verdict = mirror_differs && std::abs(cell.value_x9 - mirror) <= tolerance
                          ? Verdict::published_inconsistency
                          : Verdict::mismatch;
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// tables

CommandResult run_tables(const RunConfig& config) {
  const double tol = config.effective_tolerance();
  const auto distances = standard_table_distances();
  const PairTable neg = generate_table(PairMeasure::negativity, distances, config.sign_left, config.sign_right);
  const PairTable rea = generate_table(PairMeasure::realignment, distances, config.sign_left, config.sign_right);

  CommandResult result;
  std::ostringstream md;
  for (const auto& [table, published, prefix, title] :
       {std::tuple{&neg, &published_negativity_table(), std::string("nn.negativity"),
                   std::string("Nearest-neighbour negativity (x9)")},
        std::tuple{&rea, &published_realignment_table(), std::string("nn.realignment"),
                   std::string("Nearest-neighbour entanglement by realignment (x9)")}}) {
    const auto records = compare_table(*table, *published, prefix, tol);
    for (std::size_t k = 0; k < records.size(); ++k) {
      const DiscrepancyRecord& rec = records[k];
      Record r = rec.to_json();
      r["inputs"]["sign_l"] = sign_string(config.sign_left);
      r["inputs"]["sign_r"] = sign_string(config.sign_right);
      const TableCell& cell = table->at(k / distances.size(), k % distances.size());
      r["oracle_value"] = cell.oracle_value_x9 ? Record(*cell.oracle_value_x9) : Record(nullptr);
      if (rec.verdict == Verdict::mismatch || cell.provenance == Provenance::disagree) result.passed = false;
      result.records.push_back(std::move(r));
    }

    md << "### " << title << "\n\n|";
    for (const auto& d : distances) md << " | N_r=" << d.to_string();
    md << " |\n|---";
    for (std::size_t c = 0; c < distances.size(); ++c) md << "|---";
    md << "|\n";
    for (std::size_t i = 0; i < distances.size(); ++i) {
      md << "| N_l=" << distances[i].to_string();
      for (std::size_t j = 0; j < distances.size(); ++j) md << " | " << fixed5(table->at(i, j).value_x9);
      md << " |\n";
    }
    md << "\n";
    for (const auto& rec : records)
      if (rec.verdict != Verdict::match)
        md << "- " << rec.claim << ": computed " << fixed5(rec.computed_value) << ", published "
           << fixed5(rec.published_value) << " -> " << to_string(rec.verdict) << "\n";
    md << "\n";
  }
  result.markdown = md.str();
  return result;
}

// ---------------------------------------------------------------------------
// entropy-scan

CommandResult run_entropy_scan(const RunConfig& config) {
  const BoundaryConfig bc{config.left.value_or(BoundaryDistance::infinite()),
                          config.right.value_or(BoundaryDistance::infinite()), config.sign_left,
                          config.sign_right};
  const double tol = config.effective_tolerance();
  CommandResult result;
  const auto points = decay_scan(bc, config.l_min, config.l_max);
  const double sat = saturation_value(bc);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const DecayPoint& pt = points[i];
    Record r = Record::object();
    r["claim"] = "block-entropy";
    Record inputs = config_inputs(bc);
    inputs["L"] = pt.block_length;
    r["inputs"] = inputs;
    r["value"] = pt.entropy;
    r["p"] = minus_third_power(pt.block_length);
    r["saturation"] = sat;
    r["deviation"] = pt.deviation;
    r["ratio"] = (i > 0 && points[i - 1].deviation != 0.0) ? Record(pt.deviation / points[i - 1].deviation)
                                                           : Record(nullptr);
    r["first_order"] = entropy_first_order(bc, pt.block_length);
    r["linearized"] = entropy_linearized(bc, pt.block_length);
    r["asymptotic"] = entropy_asymptotic(bc, pt.block_length);
    std::string provenance = "analytic";
    Record oracle = nullptr;
    if (bc.is_finite() && bc.left.sites() + bc.right.sites() + pt.block_length <= kMaxTableOracleSites) {
      const int len = static_cast<int>(pt.block_length);
      const SpinChainState chain = build_vbs_gobc(bc, len);
      const double s = entanglement_entropy(chain, site_range(static_cast<std::size_t>(bc.left.sites()),
                                                              static_cast<std::size_t>(len)));
      oracle = s;
      if (std::abs(s - pt.entropy) <= tol) {
        provenance = "both-agree";
      } else {
        provenance = "disagree";
        result.passed = false;
      }
    }
    r["oracle_value"] = oracle;
    r["provenance"] = provenance;
    result.records.push_back(std::move(r));
  }
  return result;
}

// ---------------------------------------------------------------------------
// compare-xx

CommandResult run_compare_xx(const RunConfig& config) {
  const BoundaryConfig bc{config.left.value_or(BoundaryDistance(1)), config.right.value_or(BoundaryDistance(1)),
                          config.sign_left, config.sign_right};
  CommandResult result;
  const double sat = saturation_value(bc);
  double prev_xx = 0.0, prev_vbs = 0.0;
  int prev_n = 0;
  for (long long l = config.l_min; l <= config.l_max; ++l) {
    // Critical chain at fixed aspect ratio: N = 4n, N_nr = n, block 2n.
    const int n = static_cast<int>(l);
    const int chain = 4 * n;
    const double xx = std::abs(xx_boundary_term(2 * n, chain, n, config.exponent_k));
    const double vbs = std::abs(block_entropy(bc, l) - sat);
    Record r = Record::object();
    r["claim"] = "compare-xx";
    Record inputs = config_inputs(bc);
    inputs["L"] = l;
    inputs["xx_N"] = chain;
    inputs["xx_N_nr"] = n;
    inputs["K"] = config.exponent_k;
    r["inputs"] = inputs;
    r["value"] = vbs;
    r["xx_boundary_term"] = xx;
    r["xx_log_slope"] = prev_n > 0 ? Record(std::log(xx / prev_xx) / std::log(double(chain) / prev_n))
                                   : Record(nullptr);
    r["vbs_log_ratio"] = (prev_n > 0 && prev_vbs > 0.0 && vbs > 0.0) ? Record(std::log(vbs / prev_vbs))
                                                                     : Record(nullptr);
    r["provenance"] = "analytic";
    result.records.push_back(std::move(r));
    prev_xx = xx;
    prev_vbs = vbs;
    prev_n = chain;
  }
  return result;
}

// ---------------------------------------------------------------------------
// findings

Record first_order_entropy_finding() {
  double worst_ratio = 0.0;
  double min_order = std::numeric_limits<double>::infinity();
  Record worst_inputs = Record::object();
  for (int nl = 1; nl <= 6; ++nl) {
    for (int nr = 1; nr <= 6; ++nr) {
      const BoundaryConfig bc = canonical(nl, nr);
      // Least-squares slope of log|residual| against log|p| over L = 3..12.
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int count = 0;
      for (int l = 3; l <= 12; ++l) {
        const double p = minus_third_power(l);
        const double residual = std::abs(entropy_first_order(bc, l) - block_entropy(bc, l));
        const double ratio = residual / (p * p);
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst_inputs = config_inputs(bc);
          worst_inputs["L"] = l;
        }
        if (residual > 0.0) {
          const double x = std::log(std::abs(p)), y = std::log(residual);
          sx += x, sy += y, sxx += x * x, sxy += x * y;
          ++count;
        }
      }
      if (count >= 2) min_order = std::min(min_order, (count * sxy - sx * sy) / (count * sxx - sx * sx));
    }
  }
  Record r = Record::object();
  r["claim"] = "first-order-entropy";
  r["kind"] = "finding";
  r["inputs"] = worst_inputs;
  r["value"] = worst_ratio;
  r["paper_value"] = 10.0;
  r["measured_residual_order"] = min_order;
  r["verdict"] = to_string(worst_ratio <= 10.0 ? Verdict::match : Verdict::mismatch);
  r["provenance"] = "analytic";
  r["note"] =
      "max |S_first_order - S_exact| / p^2 over N_l,N_r in 1..6, L in 3..12; residual scales as |p|^order. "
      "The printed O(p) term is nonzero at f_l=f_r=0 where the exact linear coefficient vanishes.";
  return r;
}

Record first_order_lambda_finding() {
  double worst = 0.0;
  Record worst_inputs = Record::object();
  for (int nl = 1; nl <= 6; ++nl) {
    for (int nr = 1; nr <= 6; ++nr) {
      const BoundaryConfig bc = canonical(nl, nr);
      for (int l = 3; l <= 12; ++l) {
        const BlockSpectrum s = block_spectrum(bc, l);
        std::array<double, 4> approx = s.first_order_lambdas;
        double total = 0.0;
        for (double v : approx) total += v;
        for (double& v : approx) v /= total;
        std::sort(approx.begin(), approx.end(), std::greater<>());
        double err = 0.0;
        for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(approx[i] - s.lambdas[i]));
        const double ratio = err / (s.p * s.p);
        if (ratio > worst) {
          worst = ratio;
          worst_inputs = config_inputs(bc);
          worst_inputs["L"] = l;
        }
      }
    }
  }
  Record r = Record::object();
  r["claim"] = "rho-tilde.first-order-eigenvalues";
  r["kind"] = "finding";
  r["inputs"] = worst_inputs;
  r["value"] = worst;
  r["paper_value"] = 10.0;
  r["verdict"] = to_string(worst <= 10.0 ? Verdict::match : Verdict::mismatch);
  r["provenance"] = "analytic";
  r["note"] =
      "max |lambda_first_order - lambda_exact| / p^2; the 2x2 block correction is ~ p^2 / |f_l + f_r|, "
      "so the bound degrades as both boundaries recede.";
  return r;
}

Record decay_window_finding() {
  double worst = 0.0;
  Record worst_inputs = Record::object();
  long long latest_onset = 0;
  for (const BoundaryConfig& bc : finite_grid(Sign::plus, Sign::plus)) {
    const auto pts = decay_scan(bc, 1, 40);
    auto rel = [&](std::size_t i) {  // |dev(L+1)/dev(L)| vs 1/3 with L = pts[i].block_length
      return std::abs(std::abs(pts[i + 1].deviation / pts[i].deviation) - 1.0 / 3.0) * 3.0;
    };
    for (std::size_t i = 5; i < 11; ++i)
      if (rel(i) > worst) {
        worst = rel(i);
        worst_inputs = config_inputs(bc);
        worst_inputs["L"] = pts[i].block_length;
      }
    long long onset = 1;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (rel(i) > 0.02) onset = pts[i].block_length + 1;
    latest_onset = std::max(latest_onset, onset);
  }
  Record r = Record::object();
  r["claim"] = "block-entropy.decay-ratio-window";
  r["kind"] = "finding";
  r["inputs"] = worst_inputs;
  r["value"] = worst;
  r["paper_value"] = 0.02;
  r["onset_L_all_configs"] = latest_onset;
  r["verdict"] = to_string(worst <= 0.02 ? Verdict::match : Verdict::mismatch);
  r["provenance"] = "analytic";
  r["note"] =
      "max relative deviation of |dev(L+1)/dev(L)| from 1/3 for L in 6..11 over N_l,N_r in 1..4; the ratio "
      "settles once |p| << |f_l f_r|, i.e. for L beyond about N_l + N_r.";
  return r;
}

Record log_constant_finding() {
  const std::array<BoundaryConfig, 3> configs = {
      BoundaryConfig{BoundaryDistance(3), BoundaryDistance(3)},
      BoundaryConfig{BoundaryDistance(4), BoundaryDistance(4)},
      BoundaryConfig{BoundaryDistance(3), BoundaryDistance::infinite()}};
  bool ln2_ok = true, one_ok = true;
  double ln2_worst = 0.0, one_worst = 0.0;
  for (const auto& bc : configs) {
    const double exact = block_entropy(bc, 20);
    const double fl = boundary_f(bc.left), fr = boundary_f(bc.right);
    const double bound = std::max(std::pow(fl, 4), std::pow(fr, 4));
    const double e_ln2 = std::abs(exact - entropy_asymptotic(bc, 20, std::numbers::ln2));
    const double e_one = std::abs(exact - entropy_asymptotic(bc, 20, 1.0));
    ln2_ok = ln2_ok && e_ln2 <= bound;
    one_ok = one_ok && e_one <= bound;
    ln2_worst = std::max(ln2_worst, e_ln2 / bound);
    one_worst = std::max(one_worst, e_one / bound);
  }
  Record r = Record::object();
  r["claim"] = "asymptotic.log-base-constant";
  r["kind"] = "finding";
  Record inputs = Record::object();
  inputs["configs"] = "(3,3),(4,4),(3,inf)";
  inputs["L"] = 20;
  r["inputs"] = inputs;
  r["value"] = kAsymptoticLogConstant;
  r["paper_value"] = 1.0;
  r["residual_over_f4_c_ln2"] = ln2_worst;
  r["residual_over_f4_c_1"] = one_worst;
  r["verdict"] = to_string(one_ok ? Verdict::match : Verdict::mismatch);
  r["provenance"] = "analytic";
  r["note"] = ln2_ok ? "1/18 coefficient holds in nats; with entropy in bits the constant is c = ln 2"
                     : "neither constant reproduces the exact entropy to O(f^4)";
  return r;
}

Record relative_sign_finding() {
  double worst = 0.0;
  Record worst_inputs = Record::object();
  for (const BoundaryConfig& same : finite_grid(Sign::plus, Sign::plus)) {
    BoundaryConfig opposite = same;
    opposite.sign_right = Sign::minus;
    for (int l = 1; l <= 4; ++l) {
      const double d = std::abs(block_entropy(same, l) - block_entropy(opposite, l));
      if (d > worst) {
        worst = d;
        worst_inputs = config_inputs(same);
        worst_inputs["L"] = l;
      }
    }
  }
  Record r = Record::object();
  r["claim"] = "block-entropy.boundary-sign-independence";
  r["kind"] = "finding";
  r["inputs"] = worst_inputs;
  r["value"] = worst;
  r["paper_value"] = 0.0;
  r["verdict"] = to_string(worst <= kVerifyTolerance ? Verdict::match : Verdict::mismatch);
  r["provenance"] = "both-agree";
  r["note"] =
      "max |S(+,+) - S(+,-)|; only the global flip (p,q) -> (-p,-q) leaves entropies and pair measures "
      "unchanged. The published nearest-neighbour tables correspond to p = q.";
  return r;
}

// ---------------------------------------------------------------------------
// verify

CommandResult run_verify(const RunConfig& config) {
  const double tol = config.effective_tolerance();
  CommandResult result;
  auto add = [&](Record r) {
    if (r["kind"] == "check" && r["verdict"] != to_string(Verdict::match)) result.passed = false;
    result.records.push_back(std::move(r));
  };

  // Ground-state residuals, N = 3..8, all boundary signs.
  for (int n = 3; n <= 8; ++n) {
    Worst w;
    for (const auto& [sl, sr] : kAllSigns) {
      const BoundaryConfig bc{BoundaryDistance(1), BoundaryDistance(1), sl, sr};
      const double res = verify_ground_state(build_vbs_gobc(bc, n - 2));
      Record in = config_inputs(bc);
      in["N"] = n;
      w.update(res, in);
    }
    add(check_record("ground-state.residual", w.inputs, w.value, tol, w.value <= tol, "oracle"));
  }

  {
    Worst w;
    const ComplexMatrix proj = bond_spin2_projector();
    for (const auto& [sl, sr] : kAllSigns) {
      const BoundaryConfig bc{BoundaryDistance(2), BoundaryDistance(1), sl, sr};
      const SpinChainState s = build_vbs_gobc(bc, 2);
      for (std::size_t k = 0; k + 1 < s.sites(); ++k)
        w.update(apply_bond_operator(s, k, proj).norm(), config_inputs(bc));
    }
    add(check_record("ground-state.bond-spin2-annihilation", w.inputs, w.value, tol, w.value <= tol, "oracle"));
  }

  {
    ComplexMatrix states(81 * 9, 4);
    int c = 0;
    for (const auto& [sl, sr] : kAllSigns)
      states.col(c++) = build_vbs_gobc({BoundaryDistance(2), BoundaryDistance(2), sl, sr}, 2).amplitudes;
    const double smallest = Eigen::JacobiSVD<ComplexMatrix>(states).singularValues().minCoeff();
    Record in = Record::object();
    in["N"] = 6;
    add(check_record("ground-state.four-states-independent", in, smallest, 1e-3, smallest > 1e-3, "oracle"));
  }

  {
    Worst w;
    for (int n = 1; n <= 12; ++n)
      for (Sign s : {Sign::plus, Sign::minus}) {
        const BoundaryWeights bw = boundary_weights(BoundaryDistance(n), Side::left, s);
        const RealVector ev = hermitian_eigenvalues(boundary_site_rdm(BoundaryDistance(n), s).matrix());
        const double err = std::max(std::abs(ev(0) - std::min(bw.xi_plus, bw.xi_minus)),
                                    std::abs(ev(1) - std::max(bw.xi_plus, bw.xi_minus)));
        Record in = Record::object();
        in["N"] = n;
        in["sign"] = sign_string(s);
        w.update(err, in);
      }
    add(check_record("boundary.site-rdm-vs-weights", w.inputs, w.value, tol, w.value <= tol, "analytic"));
  }

  {
    Worst w;
    for (int n = 1; n <= 6; ++n)
      for (Sign s : {Sign::plus, Sign::minus}) {
        const SpinChainState wing = build_left_wing(n, s);
        const DensityMatrix rho = reduced_density(wing, {wing.sites() - 1});
        const BoundaryWeights bw = boundary_weights(BoundaryDistance(n), Side::left, s);
        // The half-spin carries xi_b on b and xi_a on a: V = diag(sqrt xi_b, sqrt xi_a).
        const double err = std::max(std::abs(rho.matrix()(1, 1).real() - bw.V(0, 0) * bw.V(0, 0)),
                                    std::abs(rho.matrix()(0, 0).real() - bw.V(1, 1) * bw.V(1, 1)));
        Record in = Record::object();
        in["N"] = n;
        in["sign"] = sign_string(s);
        w.update(err, in);
      }
    add(check_record("boundary.wing-oracle-vs-weights", w.inputs, w.value, tol, w.value <= tol, "both-agree"));
  }

  {
    const double err =
        (twirled_singlet_sum() - (Eigen::Matrix4cd::Identity() - singlet_projector())).cwiseAbs().maxCoeff();
    add(check_record("boundary.twirl-identity", Record::object(), err, tol, err <= tol, "analytic"));
  }

  {
    Worst block, pair, effective;
    for (const auto& [sl, sr] : kAllSigns) {
      for (const BoundaryConfig& bc : finite_grid(sl, sr)) {
        for (int l = 1; l <= 4 && bc.left.sites() + bc.right.sites() + l <= kMaxTableOracleSites; ++l) {
          const SpinChainState chain = build_vbs_gobc(bc, l);
          const auto first = static_cast<std::size_t>(bc.left.sites());
          const double oracle = entanglement_entropy(chain, site_range(first, static_cast<std::size_t>(l)));
          Record in = config_inputs(bc);
          in["L"] = l;
          block.update(std::abs(oracle - block_entropy(bc, l)), in);

          const SpinChainState eff = build_effective_chain(left_weights(bc), right_weights(bc), l);
          effective.update(std::abs(entanglement_entropy(eff, site_range(1, static_cast<std::size_t>(l))) - oracle),
                           in);
          if (l >= 2) {
            const double td = trace_distance(rho_two_site(bc, l).matrix(), oracle_rho_two_site(bc, l).matrix());
            pair.update(td, in);
          }
        }
      }
    }
    add(check_record("oracle.block-entropy-vs-rho-tilde", block.inputs, block.value, tol, block.value <= tol,
                     "both-agree"));
    add(check_record("oracle.block-entropy-vs-effective-chain", effective.inputs, effective.value, tol,
                     effective.value <= tol, "both-agree"));
    add(check_record("oracle.two-site-trace-distance", pair.inputs, pair.value, tol, pair.value <= tol,
                     "both-agree"));
  }

  {
    Worst flip, mirror;
    for (const BoundaryConfig& bc : finite_grid(Sign::plus, Sign::minus, 6)) {
      const BoundaryConfig flipped_bc{bc.left, bc.right, flipped(bc.sign_left), flipped(bc.sign_right)};
      for (int l = 1; l <= 6; ++l) {
        Record in = config_inputs(bc);
        in["L"] = l;
        flip.update(std::abs(block_entropy(bc, l) - block_entropy(flipped_bc, l)), in);
        mirror.update(std::abs(block_entropy(bc, l) - block_entropy(bc.mirrored(), l)), in);
      }
      const PairMeasures a = pair_measures(bc, 2);
      const PairMeasures b = pair_measures(bc.mirrored(), 2);
      const PairMeasures c = pair_measures(flipped_bc, 2);
      Record in = config_inputs(bc);
      in["L"] = 2;
      mirror.update(std::max(std::abs(a.negativity - b.negativity), std::abs(a.realignment - b.realignment)), in);
      flip.update(std::max(std::abs(a.negativity - c.negativity), std::abs(a.realignment - c.realignment)), in);
    }
    add(check_record("symmetry.global-spin-flip", flip.inputs, flip.value, tol, flip.value <= tol, "analytic"));
    add(check_record("symmetry.mirror", mirror.inputs, mirror.value, tol, mirror.value <= tol, "analytic"));
  }

  {
    const auto distances = standard_table_distances();
    Worst w;
    for (PairMeasure m : {PairMeasure::negativity, PairMeasure::realignment}) {
      const PairTable t = generate_table(m, distances, Sign::plus, Sign::plus, tol);
      for (const auto& row : t.cells)
        for (const auto& cell : row)
          if (cell.oracle_value_x9) {
            Record in = Record::object();
            in["measure"] = to_string(m);
            in["N_l"] = cell.left.to_string();
            in["N_r"] = cell.right.to_string();
            w.update(std::abs(*cell.oracle_value_x9 - cell.value_x9) / 9.0, in);
          }
    }
    add(check_record("tables.oracle-agreement", w.inputs, w.value, tol, w.value <= tol, "both-agree"));
  }

  {
    Worst w;
    for (const BoundaryConfig& bc : finite_grid(Sign::plus, Sign::plus))
      for (int l = 3; l <= 10 - bc.left.sites() - bc.right.sites(); ++l) {
        const DensityMatrix rho = oracle_rho_two_site(bc, l);
        Record in = config_inputs(bc);
        in["separation"] = l - 1;
        w.update(std::max(negativity_pair(rho), realignment_pair(rho)), in);
      }
    add(check_record("two-site.non-nearest-neighbour-zero", w.inputs, w.value, 1e-12, w.value <= 1e-12, "oracle"));
  }

  add(first_order_entropy_finding());
  add(first_order_lambda_finding());
  add(decay_window_finding());
  add(log_constant_finding());
  add(relative_sign_finding());
  return result;
}

// ---------------------------------------------------------------------------
// rendering

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

std::string render(const std::vector<Record>& records, OutputFormat format) {
  if (format == OutputFormat::json) return Record(records).dump(2) + "\n";

  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  std::vector<std::string> columns;
  std::set<std::string> seen;
  for (const Record& r : records) {
    auto& row = rows.emplace_back();
    flatten(r, "", row);
    for (const auto& [k, v] : row)
      if (seen.insert(k).second) columns.push_back(k);
  }
  auto lookup = [](const auto& row, const std::string& key) {
    for (const auto& [k, v] : row)
      if (k == key) return v;
    return std::string();
  };

  std::ostringstream os;
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_escape(columns[c]);
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_escape(lookup(row, columns[c]));
      os << "\n";
    }
  } else {
    os << "|";
    for (const auto& c : columns) os << " " << c << " |";
    os << "\n|";
    for (std::size_t c = 0; c < columns.size(); ++c) os << "---|";
    os << "\n";
    for (const auto& row : rows) {
      os << "|";
      for (const auto& c : columns) os << " " << lookup(row, c) << " |";
      os << "\n";
    }
  }
  return os.str();
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  CommandResult result;
  try {
    switch (config.command) {
      case Command::tables: result = run_tables(config); break;
      case Command::entropy_scan: result = run_entropy_scan(config); break;
      case Command::compare_xx: result = run_compare_xx(config); break;
      case Command::verify: result = run_verify(config); break;
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = (config.format == OutputFormat::markdown && result.markdown)
                               ? *result.markdown
                               : render(result.records, config.format);
  if (config.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
      err << "error: cannot write " << config.out_path << "\n";
      return 1;
    }
  }
  if (!result.passed) {
    for (const Record& r : result.records) {
      const auto v = r.find("verdict");
      const bool check = !r.contains("kind") || r["kind"] == "check";
      if (check && ((v != r.end() && *v == to_string(Verdict::mismatch)) ||
                    (r.contains("provenance") && r["provenance"] == "disagree")))
        err << "FAILED " << r["claim"].get<std::string>() << ": " << r.dump() << "\n";
    }
    return 1;
  }
  return 0;
}

}  // namespace vbslab
