#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "exlump/report.hpp"
#include "json.hpp"

namespace exlump {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string scalar_text(const Scalar& x) { return x.str(); }

// sum_i v_i * names_i
std::string linear_form(const SparseVec& v, const std::vector<std::string>& names) {
  MultiPoly p(names.size());
  for (const auto& [i, c] : v.entries()) p += c * MultiPoly::variable(names.size(), i);
  return p.str(names);
}

std::vector<Field> distinct_fields(const std::vector<ReportEntry>& chain) {
  std::vector<Field> out;
  for (const auto& e : chain) {
    for (const auto& level : tower_levels(e.field)) {
      if (std::find(out.begin(), out.end(), level) == out.end()) out.push_back(level);
    }
  }
  return out;
}

std::string field_label(const Field& f) {
  if (!f) return "QQ";
  std::string s = "QQ(";
  bool first = true;
  for (const auto& level : tower_levels(f)) {
    if (!first) s += ", ";
    s += level->generator;
    first = false;
  }
  return s + ")";
}

std::string minpoly_text(const Field& level) { return UPoly(level->minpoly).str(level->generator); }

std::vector<std::string> refinement_relations(const ReportEntry& prev, const ReportEntry& cur, std::size_t i) {
  const auto prev_names = macro_names(i - 1, prev.dimension);
  const auto names = macro_names(i, cur.dimension);
  std::vector<std::string> out;
  for (std::size_t j = 0; j < cur.refinement.cols(); ++j) {
    out.push_back(prev_names[j] + " = " + linear_form(cur.refinement.column(j), names));
  }
  return out;
}

std::vector<std::string> rhs_names(const ODEModel& model, std::size_t entry, std::size_t m) {
  auto names = macro_names(entry, m);
  names.insert(names.end(), model.params.begin(), model.params.end());
  return names;
}

std::string seconds_text(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << s;
  return os.str();
}

}  // namespace

std::vector<std::string> macro_names(std::size_t entry, std::size_t m) {
  return default_names(m, "y_" + std::to_string(entry) + "_");
}

ReduceResult reduce_model(const ODEModel& input, const ReportConfig& cfg) {
  ReduceResult r;
  r.model = cfg.curry ? curry_parameters(input) : input;
  const ODEModel& m = r.model;
  r.statistics.dimension = m.dimension();

  auto t0 = Clock::now();
  const JacobianDecomposition d = jacobian_decomposition(m);
  AlgebraOptions ao;
  ao.seed = cfg.seed;
  const EchelonMatBasis algebra = jacobian_algebra(d, ao);
  r.statistics.seconds["algebra"] = since(t0);

  t0 = Clock::now();
  SearchConfig sc;
  sc.seed = cfg.seed;
  sc.limits = cfg.limits;
  const ChainResult ch = maximal_chain(algebra, sc);
  const std::vector<Subspace> chain = simplify_chain(d.matrices, ch.subspaces);
  r.diagnostics = ch.diagnostics;
  r.statistics.seconds["search"] = since(t0);

  t0 = Clock::now();
  const LumpingMatrices lm = lumping_and_refinement(chain);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    LumpingCheck check = verify_lumping(m, lm.lumpings[i]);
    if (!check.ok()) throw StructuralError("lumping " + std::to_string(i + 1) + " failed verification: " + check.message);
    ReportEntry e;
    e.dimension = chain[i].dim();
    e.field = chain[i].field();
    e.lumping = lm.lumpings[i];
    e.rhs = std::move(check.reduced);
    if (i > 0) e.refinement = lm.refinements[i - 1];
    e.provenance = chain[i] == ch.subspaces[i] ? ch.provenance[i] : "normalized";
    r.chain.push_back(std::move(e));
  }
  r.statistics.total = chain.size();
  r.statistics.nonequivalent = count_nonequivalent(m, lm.lumpings);
  r.statistics.seconds["emit"] = since(t0);
  return r;
}

std::string render_text(const ReduceResult& r, const ReportConfig& cfg) {
  const ODEModel& m = r.model;
  std::ostringstream os;
  os << "exlump " << kVersion << "\n";
  os << "model: " << (m.name.empty() ? "model" : m.name) << " (" << m.dimension() << " states:";
  for (std::size_t i = 0; i < m.states.size(); ++i) os << (i ? ", " : " ") << m.states[i];
  os << ")\n";
  if (!m.params.empty()) {
    os << "parameters:";
    for (std::size_t i = 0; i < m.params.size(); ++i) os << (i ? ", " : " ") << m.params[i];
    os << "\n";
  }
  os << "seed: " << cfg.seed << "\n";
  os << "caps: max_tower_height=" << cfg.limits.max_tower_height
     << ", max_extension_degree=" << cfg.limits.max_extension_degree << "\n";
  os << "currying: " << (cfg.curry ? "on" : "off") << "\n";
  const auto fields = distinct_fields(r.chain);
  if (!fields.empty()) {
    os << "fields:\n";
    for (const auto& f : fields) {
      os << "  " << f->generator << ": " << minpoly_text(f) << " = 0 over " << field_label(f->parent) << "\n";
    }
  }
  os << "chain: " << r.statistics.total << (r.statistics.total == 1 ? " lumping, " : " lumpings, ")
     << r.statistics.nonequivalent << " non-equivalent\n";

  const auto state_names = m.states;
  for (std::size_t i = 0; i < r.chain.size(); ++i) {
    const ReportEntry& e = r.chain[i];
    const std::size_t idx = i + 1;
    const auto names = macro_names(idx, e.dimension);
    const auto gnames = rhs_names(m, idx, e.dimension);
    os << "\nlumping " << idx << " (dimension " << e.dimension << ", over " << field_label(e.field) << ", path "
       << e.provenance << ")\n";
    for (std::size_t j = 0; j < e.dimension; ++j) {
      os << "  " << names[j] << " = " << linear_form(e.lumping.column(j), state_names) << "\n";
    }
    for (std::size_t j = 0; j < e.dimension; ++j) os << "  " << names[j] << "' = " << e.rhs[j].str(gnames) << "\n";
    if (i > 0) {
      for (const auto& rel : refinement_relations(r.chain[i - 1], e, idx)) os << "  refines: " << rel << "\n";
    }
  }
  if (!r.diagnostics.empty()) {
    os << "\ndiagnostics:\n";
    for (const auto& d : r.diagnostics) os << "  " << d << "\n";
  }
  if (cfg.stats) {
    os << "\nseconds:";
    for (const auto& [k, v] : r.statistics.seconds) os << " " << k << "=" << seconds_text(v);
    os << "\n";
  }
  return os.str();
}

std::string render_json(const ReduceResult& r, const ReportConfig& cfg) {
  const ODEModel& m = r.model;
  json j;
  j["version"] = kVersion;
  j["model"] = {{"name", m.name}, {"dimension", m.dimension()}, {"states", m.states}, {"parameters", m.params}};
  j["seed"] = cfg.seed;
  j["caps"] = {{"max_tower_height", cfg.limits.max_tower_height},
               {"max_extension_degree", cfg.limits.max_extension_degree}};
  j["curried"] = cfg.curry;
  json chain = json::array();
  for (std::size_t i = 0; i < r.chain.size(); ++i) {
    const ReportEntry& e = r.chain[i];
    const std::size_t idx = i + 1;
    json entry;
    entry["dimension"] = e.dimension;
    if (!e.field) {
      entry["field"] = "QQ";
    } else {
      json tower = json::array();
      for (const auto& level : tower_levels(e.field)) {
        tower.push_back({{"gen", level->generator}, {"minpoly", minpoly_text(level)}});
      }
      entry["field"] = {{"tower", tower}};
    }
    const auto names = macro_names(idx, e.dimension);
    json macros = json::array();
    for (std::size_t c = 0; c < e.dimension; ++c) {
      json coeffs = json::object();
      const SparseVec col = e.lumping.column(c);
      for (const auto& [s, v] : col.entries()) coeffs[m.states[s]] = scalar_text(v);
      macros.push_back({{"name", names[c]}, {"coefficients", coeffs}});
    }
    entry["macro_variables"] = macros;
    const auto gnames = rhs_names(m, idx, e.dimension);
    json rhs = json::array();
    for (const auto& g : e.rhs) rhs.push_back(g.str(gnames));
    entry["reduced_rhs"] = rhs;
    // Row j expresses macro-variable j of the previous entry in this one.
    json refinement = json::array();
    for (std::size_t c = 0; c < e.refinement.cols(); ++c) {
      json row = json::array();
      for (std::size_t k = 0; k < e.refinement.rows(); ++k) row.push_back(scalar_text(e.refinement.get(k, c)));
      refinement.push_back(row);
    }
    entry["refinement"] = refinement;
    entry["provenance"] = e.provenance;
    chain.push_back(entry);
  }
  j["chain"] = chain;
  json seconds = json::object();
  if (cfg.stats) {
    for (const auto& [k, v] : r.statistics.seconds) seconds[k] = v;
  }
  j["statistics"] = {{"total", r.statistics.total},
                     {"nonequivalent", r.statistics.nonequivalent},
                     {"seconds", seconds}};
  j["diagnostics"] = r.diagnostics;
  return j.dump(2) + "\n";
}

ReduceOutput run_reduce(const ReportConfig& cfg) {
  ReduceOutput out;
  ODEModel model;
  const auto t0 = Clock::now();
  try {
    model = read_model_file(cfg.input);
  } catch (const ParseError& e) {
    out.exit_code = 2;
    out.err = cfg.input + ":" + e.what() + "\n";
    return out;
  } catch (const StructuralError& e) {
    out.exit_code = 2;
    out.err = cfg.input + ": " + e.what() + "\n";
    return out;
  } catch (const IoError& e) {
    out.exit_code = 4;
    out.err = std::string(e.what()) + "\n";
    return out;
  }
  const double parse_seconds = since(t0);
  ReduceResult r;
  try {
    r = reduce_model(model, cfg);
  } catch (const std::exception& e) {
    out.exit_code = 3;
    out.err = cfg.input + ": " + e.what() + "\n";
    return out;
  }
  r.statistics.seconds["parse"] = parse_seconds;
  out.out = cfg.format == Format::Json ? render_json(r, cfg) : render_text(r, cfg);
  if (!r.diagnostics.empty()) {
    out.exit_code = 3;
    for (const auto& d : r.diagnostics) out.err += cfg.input + ": " + d + "\n";
  }
  return out;
}

std::string bucket_of(std::size_t dimension) {
  static const std::pair<std::size_t, std::size_t> ranges[] = {{2, 9},   {10, 19}, {20, 29}, {30, 39},
                                                               {40, 59}, {60, 79}, {80, 99}, {100, 133}};
  for (const auto& [lo, hi] : ranges) {
    if (dimension >= lo && dimension <= hi) return std::to_string(lo) + "-" + std::to_string(hi);
  }
  return "other";
}

BenchmarkResult benchmark(const std::string& dir, std::uint64_t seed, const FieldLimits& limits) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  BenchmarkResult b;
  ReportConfig cfg;
  cfg.seed = seed;
  cfg.limits = limits;
  for (const auto& path : files) {
    const auto t0 = Clock::now();
    try {
      const ReduceResult r = reduce_model(read_model_file(path.string()), cfg);
      BenchmarkRecord rec;
      rec.path = path.string();
      rec.dimension = r.statistics.dimension;
      rec.total = r.statistics.total;
      rec.nonequivalent = r.statistics.nonequivalent;
      rec.seconds = since(t0);
      for (const auto& d : r.diagnostics) b.failures.push_back(rec.path + ": " + d);
      b.records.push_back(rec);
    } catch (const std::exception& e) {
      b.failures.push_back(path.string() + ": " + e.what());
    }
  }

  std::vector<std::string> order = {"2-9", "10-19", "20-29", "30-39", "40-59", "60-79", "80-99", "100-133", "other"};
  for (const auto& bucket : order) {
    BenchmarkRow row;
    row.bucket = bucket;
    for (const auto& rec : b.records) {
      if (bucket_of(rec.dimension) != bucket) continue;
      row.min_s = row.count == 0 ? rec.seconds : std::min(row.min_s, rec.seconds);
      row.max_s = std::max(row.max_s, rec.seconds);
      row.avg_total += static_cast<double>(rec.total);
      row.avg_noneq += static_cast<double>(rec.nonequivalent);
      row.avg_s += rec.seconds;
      ++row.count;
    }
    if (row.count == 0) continue;
    const double n = static_cast<double>(row.count);
    row.avg_total /= n;
    row.avg_noneq /= n;
    row.avg_s /= n;
    b.rows.push_back(row);
  }
  return b;
}

std::string benchmark_table(const BenchmarkResult& b) {
  std::ostringstream os;
  os << std::left << std::setw(9) << "bucket" << std::right << std::setw(7) << "count" << std::setw(11) << "avg_total"
     << std::setw(11) << "avg_noneq" << std::setw(12) << "min_s" << std::setw(12) << "avg_s" << std::setw(12)
     << "max_s"
     << "\n";
  for (const auto& r : b.rows) {
    os << std::left << std::setw(9) << r.bucket << std::right << std::setw(7) << r.count << std::fixed
       << std::setprecision(2) << std::setw(11) << r.avg_total << std::setw(11) << r.avg_noneq
       << std::setprecision(6) << std::setw(12) << r.min_s << std::setw(12) << r.avg_s << std::setw(12) << r.max_s
       << "\n";
  }
  return os.str();
}

std::string benchmark_csv(const BenchmarkResult& b) {
  std::ostringstream os;
  os << "bucket,count,avg_total,avg_noneq,min_s,avg_s,max_s\n";
  for (const auto& r : b.rows) {
    os << r.bucket << "," << r.count << "," << std::fixed << std::setprecision(4) << r.avg_total << ","
       << r.avg_noneq << "," << std::setprecision(6) << r.min_s << "," << r.avg_s << "," << r.max_s << "\n";
  }
  return os.str();
}

}  // namespace exlump
