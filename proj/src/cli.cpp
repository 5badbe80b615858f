#include "reflexion/cli.hpp"

#include "reflexion/error.hpp"
#include "reflexion/groups.hpp"
#include "reflexion/invariants.hpp"
#include "reflexion/presentations.hpp"
#include "reflexion/regular.hpp"
#include "reflexion/zariski.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

namespace reflexion {

namespace {

struct Options {
  bool json = false;
  long max_order = Limits{}.max_order;
  int max_conductor = 64;
  long search_budget = Limits{}.search_budget;
  long subset_budget = Limits{}.subset_budget;
  std::string cache_dir;
  int threads = 1;

  Limits limits() const { return Limits{max_order, subset_budget, search_budget}; }
};

// ---- flag values -------------------------------------------------------------

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::logic_error&) {
      throw ParseError(std::string("bad integer in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) {
    throw ParseError(std::string("empty ") + what);
  }
  return out;
}

Cyclo parse_scalar(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  try {
    std::size_t used = 0;
    const long p = std::stol(num, &used);
    if (used != num.size()) {
      throw std::invalid_argument(text);
    }
    long q = 1;
    if (slash != std::string::npos) {
      const std::string den = text.substr(slash + 1);
      q = std::stol(den, &used);
      if (used != den.size() || q == 0) {
        throw std::invalid_argument(text);
      }
    }
    return Cyclo(Rational(p, q));
  } catch (const std::logic_error&) {
    throw ParseError("bad rational '" + text + "'");
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 1-based indices from the command line to 0-based, range-checked
std::vector<int> to_zero_based(const std::vector<int>& one_based, int nvars, const char* what) {
  std::vector<int> out;
  for (int v : one_based) {
    if (v < 1 || v > nvars) {
      throw InvalidInput(std::string(what) + " index " + std::to_string(v) + " out of range 1.." +
                         std::to_string(nvars));
    }
    out.push_back(v - 1);
  }
  return out;
}

std::vector<int> to_one_based(std::vector<int> v) {
  for (auto& x : v) {
    ++x;
  }
  return v;
}

// ---- reports -----------------------------------------------------------------

Json basics_json(const std::vector<Poly>& basics) {
  Json arr = Json::array();
  for (const auto& f : basics) {
    arr.push_back(poly_to_json(f));
  }
  return arr;
}

long product(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 1L, std::multiplies<>());
}

Json group_info(const std::string& text, const Options& opt) {
  const GroupSpec spec = parse_group_spec(text);
  Json r;
  r["group"] = to_string(spec);
  if (const auto* t = std::get_if<TableSpec>(&spec)) {
    const ExceptionalData& data = exceptional_table(t->name);
    r["source"] = "table";
    r["rank"] = data.rank;
    r["order"] = product(data.degrees);
    r["degrees"] = data.degrees;
    r["codegrees"] = data.codegrees;
    r["N"] = reflections_from_degrees(data.degrees);
    r["Nstar"] = hyperplanes_from_codegrees(data.codegrees);
    return r;
  }
  const ReflectionGroup w = build_group(spec, opt.limits());
  r["source"] = "matrices";
  r["rank"] = w.rank();
  r["order"] = w.order();
  r["conductor"] = w.conductor();
  r["degrees"] = w.degrees;
  r["codegrees"] = w.codegrees;
  r["N"] = w.N;
  r["Nstar"] = w.Nstar;
  Json hyper = Json::array();
  for (const auto& h : w.arrangement.hyperplanes) {
    std::vector<std::string> form;
    for (Eigen::Index i = 0; i < h.form.size(); ++i) {
      form.push_back(h.form(i).to_string());
    }
    hyper.push_back(Json{{"form", form}, {"order", h.order}});
  }
  r["hyperplanes"] = hyper;
  return r;
}

ReflectionGroup matrix_group(const std::string& text, const Options& opt, GroupSpec& spec) {
  spec = parse_group_spec(text);
  if (std::holds_alternative<TableSpec>(spec)) {
    throw InvalidInput("'" + text + "' has no matrix model; this command needs matrices");
  }
  return build_group(spec, opt.limits());
}

InvariantSystem system_for(const ReflectionGroup& w, const GroupSpec& spec, const Options& opt,
                           CacheStatus& status, std::ostream& err) {
  const DiscriminantCache cache(resolve_cache_dir(
      opt.cache_dir.empty() ? std::nullopt : std::optional<std::string>(opt.cache_dir)));
  InvariantSystem sys = cached_discriminant(w, to_string(spec), cache, &status);
  if (status == CacheStatus::Corrupted) {
    err << "warning: cache entry for " << to_string(spec) << " failed verification; recomputed\n";
  }
  return sys;
}

Json group_discriminant(const std::string& text, const std::string& out_file, const Options& opt,
                        std::ostream& err) {
  GroupSpec spec;
  const ReflectionGroup w = matrix_group(text, opt, spec);
  CacheStatus status{};
  const InvariantSystem sys = system_for(w, spec, opt, status, err);
  if (!out_file.empty()) {
    write_poly_file(out_file, sys.discriminant);
  }
  Json r;
  r["group"] = to_string(spec);
  r["cache"] = to_string(status);
  r["degrees"] = sys.degrees;
  r["weight"] = sys.weight();
  r["valuation"] = sys.discriminant.valuation();
  r["basics"] = basics_json(sys.basics);
  r["discriminant"] = poly_to_json(sys.discriminant);
  return r;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json regular_rows(const std::vector<RegularityRow>& rows) {
  Json arr = Json::array();
  for (const auto& row : rows) {
    arr.push_back(Json{{"d", row.d},
                       {"regular", row.symbolic.value_or(row.lehrer_springer)},
                       {"symbolic", optional_json(row.symbolic)},
                       {"brute_force", optional_json(row.brute_force)},
                       {"lehrer_springer", row.lehrer_springer},
                       {"witnesses", row.brute_force ? Json(static_cast<long>(row.witnesses.size()))
                                                     : Json(nullptr)},
                       {"n", optional_json(row.n)}});
  }
  return arr;
}

Json regular_report_cmd(const std::string& text, const Options& opt, std::ostream& err) {
  const GroupSpec spec = parse_group_spec(text);
  Json r;
  r["group"] = to_string(spec);
  if (const auto* t = std::get_if<TableSpec>(&spec)) {
    r["source"] = "table";
    r["rows"] = regular_rows(regular_report(exceptional_table(t->name)));
    return r;
  }
  const ReflectionGroup w = build_group(spec, opt.limits());
  CacheStatus status{};
  const InvariantSystem sys = system_for(w, spec, opt, status, err);
  r["source"] = "matrices";
  r["rows"] = regular_rows(regular_report(w, sys));
  return r;
}

Json monicize_cmd(const std::string& text, int pivot, const Options& opt, std::ostream& err) {
  GroupSpec spec;
  const ReflectionGroup w = matrix_group(text, opt, spec);
  CacheStatus status{};
  const InvariantSystem sys = system_for(w, spec, opt, status, err);
  const int i0 = to_zero_based({pivot}, sys.rank(), "pivot").front();
  const int d = sys.degrees[static_cast<std::size_t>(i0)];
  const MonicizeResult res = monicize(sys, i0, opt.search_budget);
  Json r;
  r["group"] = to_string(spec);
  r["pivot"] = pivot;
  r["d"] = d;
  r["coefficients"] = res.coefficients;
  r["pivot_degree"] = univariate_view(res.system.discriminant, i0).degree();
  r["n"] = theorem_n(res.system, d);
  r["basics"] = basics_json(res.system.basics);
  r["discriminant"] = poly_to_json(res.system.discriminant);
  return r;
}

Json zariski_dominant(const std::string& file) {
  const Poly p = read_poly_file(file);
  Json rows = Json::array();
  for (const auto& dm : dominant_monomials(p)) {
    const int deg = std::accumulate(dm.exps.begin(), dm.exps.end(), 0);
    rows.push_back(Json{{"exps", dm.exps}, {"degree", deg}, {"witness", to_one_based(dm.witness)}});
  }
  Json r;
  r["nvars"] = p.nvars();
  r["dominant"] = rows;
  return r;
}

// head coefficient put back into the input's variables so X_k keeps its meaning
Poly embed_head(const Poly& head, const std::vector<int>& head_variables, const Poly& input) {
  Poly out = head;
  for (int i = 0; i < input.nvars(); ++i) {
    if (std::find(head_variables.begin(), head_variables.end(), i) == head_variables.end()) {
      out = insert_variable(out, i, input.weights()[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

Json zariski_bound(const std::string& file, const std::string& monomial, const std::string& sigma) {
  const Poly p = read_poly_file(file);
  const std::vector<int> m = parse_int_list(monomial, "monomial");
  if (static_cast<int>(m.size()) != p.nvars()) {
    throw InvalidInput("monomial needs " + std::to_string(p.nvars()) + " exponents");
  }
  Permutation perm;
  if (!sigma.empty()) {
    perm = to_zero_based(parse_int_list(sigma, "sigma"), p.nvars(), "sigma");
  } else {
    for (const auto& dm : dominant_monomials(p)) {
      if (dm.exps == m) {
        perm = dm.witness;
      }
    }
    if (perm.empty() && p.nvars() > 0) {
      throw InvalidInput("monomial " + monomial + " is not dominant");
    }
  }
  const RecursionTrace trace = generator_bound(p, m, perm);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(Json{{"pivot", s.pivot + 1},
                         {"local_degree", s.local_degree},
                         {"head_coefficient", poly_to_json(embed_head(s.head, s.head_variables, p))}});
  }
  Json r;
  r["monomial"] = m;
  r["sigma"] = to_one_based(perm);
  r["steps"] = steps;
  r["total"] = trace.total;
  return r;
}

Json zariski_classify(const std::string& file, int direction, const std::string& point) {
  const Poly p = read_poly_file(file);
  const int i = to_zero_based({direction}, p.nvars(), "direction").front();
  std::vector<Cyclo> y;
  if (point.empty()) {
    y = find_generic_line(p, i);
  } else {
    std::stringstream ss(point);
    std::string item;
    while (std::getline(ss, item, ',')) {
      y.push_back(parse_scalar(item));
    }
    if (static_cast<int>(y.size()) != p.nvars() - 1) {
      throw InvalidInput("point needs " + std::to_string(p.nvars() - 1) + " coordinates");
    }
  }
  std::vector<std::string> coords;
  for (const auto& c : y) {
    coords.push_back(c.to_string());
  }
  Json r;
  r["direction"] = direction;
  r["point"] = coords;
  r["class"] = to_string(classify_line(p, i, y));
  return r;
}

Json zariski_restrict(const std::string& file, const std::string& drop, const std::string& out_file) {
  const Poly p = read_poly_file(file);
  const std::vector<int> j = to_zero_based(parse_int_list(drop, "drop"), p.nvars(), "drop");
  const Poly q = restrict_discriminant(p, j);
  if (!out_file.empty()) {
    write_poly_file(out_file, q);
  }
  std::vector<int> kept;
  for (int i = 0; i < p.nvars(); ++i) {
    if (std::find(j.begin(), j.end(), i) == j.end()) {
      kept.push_back(i + 1);
    }
  }
  Json r;
  r["dropped"] = to_one_based(j);
  r["kept"] = kept;
  r["result"] = poly_to_json(q);
  return r;
}

Json homogenize_cmd(int n, int d, const std::string& file) {
  if (n < 1 || d < 1) {
    throw InvalidInput("--n and --d must be positive");
  }
  Json rows = Json::array();
  for (const auto& rel : parse_relations(read_text(file))) {
    const Relation out = homogenize_relation(rel, n, d);
    rows.push_back(Json{{"input", to_string(rel)},
                        {"output", to_string(out)},
                        {"letters", static_cast<long>(out.lhs.size())}});
  }
  Json r;
  r["n"] = n;
  r["d"] = d;
  r["relations"] = rows;
  return r;
}

Json orlik_solomon_cmd(const std::string& text, const Options& opt) {
  const GroupSpec spec = parse_group_spec(text);
  OrlikSolomonReport rep;
  Json r;
  r["group"] = to_string(spec);
  if (const auto* t = std::get_if<TableSpec>(&spec)) {
    rep = orlik_solomon_report(exceptional_table(t->name));
    r["source"] = "table";
  } else {
    rep = orlik_solomon_report(build_group(spec, opt.limits()), opt.limits());
    r["source"] = "matrices";
  }
  r["cond_i"] = rep.cond_i;
  r["cond_ii"] = rep.cond_ii;
  r["cond_iii"] = rep.cond_iii;
  r["cond_iv"] = rep.cond_iv;
  r["cond_iv_from_matrices"] = rep.cond_iv_from_matrices;
  r["cond_v"] = to_string(rep.cond_v);
  r["witness"] = rep.witness;
  r["consistent"] = rep.consistent;
  return r;
}

// ---- table rendering ---------------------------------------------------------

bool is_poly(const Json& j) { return j.is_object() && j.contains("format") && j.contains("terms"); }

std::string cell(const Json& j) {
  if (j.is_null()) {
    return "-";
  }
  if (j.is_string()) {
    return j.get<std::string>();
  }
  if (is_poly(j)) {
    return poly_from_json(j).to_string();
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t k = 0; k < j.size(); ++k) {
      s += (k ? ", " : "") + cell(j[k]);
    }
    return s + "]";
  }
  return j.dump();
}

bool is_row_array(const Json& j) {
  return j.is_array() && !j.empty() &&
         std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_object() && !is_poly(x); });
}

bool is_poly_array(const Json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), is_poly);
}

void render_rows(std::ostringstream& os, const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& item : rows.front().items()) {
    cols.push_back(item.key());
  }
  std::vector<std::size_t> width;
  for (const auto& c : cols) {
    width.push_back(c.size());
  }
  std::vector<std::vector<std::string>> cells;
  for (const Json& row : rows) {
    std::vector<std::string> line;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      line.push_back(cell(row.contains(cols[k]) ? row[cols[k]] : Json(nullptr)));
      width[k] = std::max(width[k], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s = " ";
    for (std::size_t k = 0; k < line.size(); ++k) {
      s += " " + line[k] + std::string(width[k] - line[k].size(), ' ');
    }
    while (!s.empty() && s.back() == ' ') {
      s.pop_back();
    }
    os << s << "\n";
  };
  emit(cols);
  std::vector<std::string> rule;
  for (auto w : width) {
    rule.emplace_back(w, '-');
  }
  emit(rule);
  for (const auto& line : cells) {
    emit(line);
  }
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const CapExceeded*>(&e)) {
    return 3;
  }
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidInput*>(&e)) {
    return 2;
  }
  if (dynamic_cast<const NotRegular*>(&e)) {
    return 1;
  }
  return 4;
}

} // namespace

std::string render_table(const Json& report) {
  std::ostringstream os;
  for (const auto& item : report.items()) {
    const Json& v = item.value();
    if (is_row_array(v)) {
      os << item.key() << ":\n";
      render_rows(os, v);
    } else if (is_poly_array(v)) {
      os << item.key() << ":\n";
      for (std::size_t k = 0; k < v.size(); ++k) {
        os << "  [" << k + 1 << "] " << cell(v[k]) << "\n";
      }
    } else {
      os << item.key() << ": " << cell(v) << "\n";
    }
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact computations with complex reflection groups and their discriminants",
               "reflexion"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("--max-order", opt.max_order, "Group order cap")->check(CLI::PositiveNumber);
  app.add_option("--max-conductor", opt.max_conductor, "Cap on phi(m) for scalars in Q(zeta_m)")
      ->check(CLI::PositiveNumber);
  app.add_option("--search-budget", opt.search_budget, "DFS and tuple search budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--subset-budget", opt.subset_budget, "Subset count before pruning")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", opt.cache_dir, "Discriminant cache directory");
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::function<Json()> action;
  std::string spec_text;
  std::string file;
  std::string out_file;

  auto* group = app.add_subcommand("group", "Group data")->require_subcommand(1)->fallthrough();
  auto* info = group->add_subcommand("info", "Degrees, codegrees, arrangement");
  info->add_option("spec", spec_text, "Group specifier")->required();
  info->callback([&] { action = [&] { return group_info(spec_text, opt); }; });
  auto* disc = group->add_subcommand("discriminant", "Basic invariants and discriminant");
  disc->add_option("spec", spec_text, "Group specifier")->required();
  disc->add_option("--out", out_file, "Write the discriminant as a polynomial file");
  disc->callback([&] { action = [&] { return group_discriminant(spec_text, out_file, opt, err); }; });

  auto* regular =
      app.add_subcommand("regular", "Regular numbers")->require_subcommand(1)->fallthrough();
  auto* report = regular->add_subcommand("report", "One row per candidate d");
  report->add_option("spec", spec_text, "Group specifier")->required();
  report->callback([&] { action = [&] { return regular_report_cmd(spec_text, opt, err); }; });

  int pivot = 0;
  auto* mon = app.add_subcommand("monicize", "Make the discriminant monic in one variable");
  mon->add_option("spec", spec_text, "Group specifier")->required();
  mon->add_option("--pivot", pivot, "Variable index (1-based)")->required();
  mon->callback([&] { action = [&] { return monicize_cmd(spec_text, pivot, opt, err); }; });

  auto* zariski = app.add_subcommand("zariski", "Generic lines and generator bounds")
                      ->require_subcommand(1)
                      ->fallthrough();
  auto* dom = zariski->add_subcommand("dominant", "Dominant monomials");
  dom->add_option("file", file, "Polynomial file")->required();
  dom->callback([&] { action = [&] { return zariski_dominant(file); }; });
  std::string monomial;
  std::string sigma;
  auto* bound = zariski->add_subcommand("bound", "Generator count for a dominant monomial");
  bound->add_option("file", file, "Polynomial file")->required();
  bound->add_option("--monomial", monomial, "Exponents, comma separated")->required();
  bound->add_option("--sigma", sigma, "Variable priority, 1-based, comma separated");
  bound->callback([&] { action = [&] { return zariski_bound(file, monomial, sigma); }; });
  int direction = 0;
  std::string point;
  auto* classify = zariski->add_subcommand("classify-line", "Generic, bad or better line");
  classify->add_option("file", file, "Polynomial file")->required();
  classify->add_option("--direction", direction, "Variable index (1-based)")->required();
  classify->add_option("--point", point, "Rational values of the other variables; omitted: search");
  classify->callback([&] { action = [&] { return zariski_classify(file, direction, point); }; });
  std::string drop;
  auto* restrict_cmd = zariski->add_subcommand("restrict", "Drop every term touching J");
  restrict_cmd->add_option("file", file, "Polynomial file")->required();
  restrict_cmd->add_option("--drop", drop, "Variables of J (1-based, comma separated)")->required();
  restrict_cmd->add_option("--out", out_file, "Write the result as a polynomial file");
  restrict_cmd->callback([&] { action = [&] { return zariski_restrict(file, drop, out_file); }; });

  int n = 0;
  int d = 0;
  auto* pres =
      app.add_subcommand("presentation", "Braid relations")->require_subcommand(1)->fallthrough();
  auto* homog = pres->add_subcommand("homogenize", "Positive homogeneous form of relations");
  homog->add_option("--n", n, "Number of generators")->required();
  homog->add_option("--d", d, "Power of the central element")->required();
  homog->add_option("file", file, "Relation file")->required();
  homog->callback([&] { action = [&] { return homogenize_cmd(n, d, file); }; });

  auto* os_cmd = app.add_subcommand("orlik-solomon", "Orlik-Solomon conditions");
  os_cmd->add_option("spec", spec_text, "Group specifier")->required();
  os_cmd->callback([&] { action = [&] { return orlik_solomon_cmd(spec_text, opt); }; });

  // CLI11 consumes its argument vector from the back
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const int saved_phi = max_phi();
  set_max_phi(opt.max_conductor);
  int code = 0;
  try {
    const Json result = action();
    out << (opt.json ? result.dump(2) + "\n" : render_table(result));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    code = 2;
  }
  set_max_phi(saved_phi);
  return code;
}

} // namespace reflexion
