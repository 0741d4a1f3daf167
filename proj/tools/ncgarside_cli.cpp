// Command-line surface: group info, verification runs, exports, Hurwitz
// orbits and normal-form queries.
//
// Exit codes: 0 success, 1 usage error, 2 load failure, 3 verification
// failure, 4 enumeration cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncgarside/garside.hpp"
#include "ncgarside/hurwitz.hpp"
#include "ncgarside/interval.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::string catalog;
  std::uint64_t cap = 2000000;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  std::string report = "text";
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Check {
  std::string name;
  bool pass = false;
  std::string value;
  double elapsed_ms = 0.0;
};

struct RunReport {
  std::string group;
  std::string checksum;
  std::vector<Check> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void print(const std::string& format) const {
    if (format == "json") {
      json doc;
      doc["schema_version"] = 1;
      doc["group"] = group;
      doc["catalog_checksum"] = checksum;
      json arr = json::array();
      for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"value", c.value},
                       {"elapsed_ms", c.elapsed_ms}});
      doc["checks"] = arr;
      doc["ok"] = all_pass();
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "group " << group << "\n";
      std::cout << "checksum " << checksum << "\n";
      for (const auto& c : checks)
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << ": " << c.value
                  << "\n";
      std::cout << (all_pass() ? "OK" : "FAILED") << "\n";
    }
  }
};

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_mpz(const std::vector<mpz_class>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s;
}

int cmd_info(const GlobalOpts& g, const std::string& group) {
  ncg::GroupCatalogEntry e = ncg::load_group(group, g.catalog);
  if (g.report == "json") {
    json doc;
    doc["schema_version"] = 1;
    doc["group"] = e.name;
    doc["catalog_checksum"] = e.checksum;
    doc["rank"] = e.rank;
    doc["conductor"] = e.conductor;
    doc["degrees"] = e.degrees;
    doc["codegrees"] = e.codegrees;
    doc["coxeter_number"] = e.coxeter_number;
    doc["order"] = e.order;
    doc["reflection_count"] = e.reflection_count;
    doc["catalan"] = ncg::catalan_number(e).get_str();
    doc["reduced_decompositions"] = ncg::reduced_decomposition_count(e).get_str();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "group " << e.name << "\n"
              << "rank " << e.rank << "\n"
              << "degrees " << join_ints(e.degrees) << "\n"
              << "codegrees " << join_ints(e.codegrees) << "\n"
              << "h " << e.coxeter_number << "\n"
              << "|W| " << e.order << "\n"
              << "|R| " << e.reflection_count << "\n"
              << "Cat(W) " << ncg::catalan_number(e).get_str() << "\n"
              << "|Red_R(c)| " << ncg::reduced_decomposition_count(e).get_str() << "\n"
              << "checksum " << e.checksum << "\n";
  }
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& group, const std::string& level) {
  ncg::GroupCatalogEntry e = ncg::load_group(group, g.catalog);
  RunReport rep;
  rep.group = e.name;
  rep.checksum = e.checksum;

  auto add = [&](const std::string& name, bool pass, const std::string& value,
                 double ms) {
    rep.checks.push_back({name, pass, value, ms});
  };

  auto t0 = std::chrono::steady_clock::now();
  ncg::IntervalPoset p = ncg::build_interval(e, g.threads);
  add("interval cardinality = Cat(W)", true,
      std::to_string(p.size()) + " = " + ncg::catalan_number(e).get_str(), ms_since(t0));

  t0 = std::chrono::steady_clock::now();
  auto poin = p.poincare_polynomial();
  bool atoms_ok = poin[1] == mpz_class(static_cast<long>(p.atoms.size()));
  add("Poincare t-coefficient = |R_c|", atoms_ok, join_mpz(poin), ms_since(t0));

  t0 = std::chrono::steady_clock::now();
  mpz_class chains = p.count_maximal_chains();
  bool chains_ok = chains == ncg::reduced_decomposition_count(e);
  add("maximal chains = n!h^n/|W|", chains_ok, chains.get_str(), ms_since(t0));

  t0 = std::chrono::steady_clock::now();
  bool duality_ok = true;
  for (size_t i = 0; i < e.degrees.size(); ++i)
    if (e.degrees[i] + e.codegrees[i] != e.coxeter_number) duality_ok = false;
  add("degree duality d_i + d_i* = h", duality_ok, "h = " + std::to_string(e.coxeter_number),
      ms_since(t0));

  t0 = std::chrono::steady_clock::now();
  bool zeta_ok = true;
  std::string zeta_vals;
  try {
    for (int N = 1; N <= 4; ++N) {
      mpz_class z = p.zeta_count(N);
      if (N > 1) zeta_vals += ",";
      zeta_vals += z.get_str();
    }
  } catch (const ncg::FormulaMismatch& ex) {
    zeta_ok = false;
    zeta_vals = ex.what();
  }
  add("zeta counts match product formula (N=1..4)", zeta_ok, zeta_vals, ms_since(t0));

  if (level == "full" || level == "huge") {
    t0 = std::chrono::steady_clock::now();
    auto lat = p.verify_lattice(g.threads);
    add("lattice property over all pairs", lat.ok(),
        std::to_string(lat.pairs) + " pairs, " + std::to_string(lat.failures.size()) +
            " failures",
        ms_since(t0));

    t0 = std::chrono::steady_clock::now();
    mpz_class red = ncg::reduced_decomposition_count(e);
    std::uint64_t cap = g.cap;
    if (level == "huge" && red.fits_ulong_p()) cap = std::max<std::uint64_t>(cap, red.get_ui() + 1);
    if (red <= mpz_class(static_cast<unsigned long>(cap))) {
      ncg::HurwitzAction act(p);
      auto tr = act.verify_transitivity(p.top, cap);
      add("Hurwitz transitivity on Red_R(c)",
          tr.transitive && mpz_class(static_cast<unsigned long>(tr.orbit_size)) == red,
          "orbit " + std::to_string(tr.orbit_size) + " of " + red.get_str(),
          ms_since(t0));
    } else {
      add("Hurwitz transitivity on Red_R(c)", true,
          "skipped: |Red| = " + red.get_str() + " exceeds cap " + std::to_string(cap),
          ms_since(t0));
    }

    t0 = std::chrono::steady_clock::now();
    ncg::DualBraidMonoid m(p);
    auto pres = m.dual_presentation();
    bool tau_ok = true;
    std::vector<bool> hit(p.size(), false);
    for (int s = 0; s < p.size(); ++s) {
      int t = m.tau(s);
      if (hit[t]) tau_ok = false;
      hit[t] = true;
    }
    add("tau permutes the simples; presentation emitted", tau_ok,
        std::to_string(pres.generators.size()) + " generators, " +
            std::to_string(pres.relations.size()) + " relations",
        ms_since(t0));

    t0 = std::chrono::steady_clock::now();
    int a = ncg::center_exponent(e, p.coxeter);
    add("center exponent computed", a >= 1 && a <= e.coxeter_number,
        std::to_string(a), ms_since(t0));
  }

  rep.print(g.report);
  return rep.all_pass() ? 0 : 3;
}

int cmd_export(const GlobalOpts& g, const std::string& group, const std::string& what,
               const std::string& format, const std::string& path) {
  ncg::GroupCatalogEntry e = ncg::load_group(group, g.catalog);
  ncg::IntervalPoset p = ncg::build_interval(e, g.threads);
  std::string out;
  if (what == "poset") {
    out = format == "json" ? p.to_json().dump(2) + "\n" : p.to_text();
  } else if (what == "presentation") {
    ncg::DualBraidMonoid m(p);
    auto pres = m.dual_presentation();
    out = format == "json" ? m.presentation_json(pres).dump(2) + "\n"
                           : m.presentation_text(pres);
  } else if (what == "orbit") {
    ncg::HurwitzAction act(p);
    auto reds = p.reduced_decompositions(p.top, g.cap);
    auto stats = act.orbit(reds[0], g.cap, true);
    if (format == "json") {
      json doc;
      doc["schema_version"] = 1;
      doc["group"] = e.name;
      doc["orbit_size"] = stats.size;
      doc["bfs_depth"] = stats.bfs_depth;
      std::vector<std::vector<int>> tuples;
      for (auto k : stats.tuples) tuples.push_back(act.unpack(k, e.rank));
      doc["tuples"] = tuples;
      out = doc.dump(2) + "\n";
    } else {
      out = "group " + e.name + "\norbit " + std::to_string(stats.size) + "\n";
      for (auto k : stats.tuples) out += join_ints(act.unpack(k, e.rank)) + "\n";
    }
  } else {
    std::cerr << "unknown export target: " << what << "\n";
    return 1;
  }
  if (path.empty() || path == "-") {
    std::cout << out;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open " << path << "\n";
      return 2;
    }
    f << out;
  }
  return 0;
}

int cmd_hurwitz(const GlobalOpts& g, const std::string& group, const std::string& element,
                bool huge) {
  ncg::GroupCatalogEntry e = ncg::load_group(group, g.catalog);
  ncg::IntervalPoset p = ncg::build_interval(e, g.threads);
  int u;
  if (element == "top") {
    u = p.top;
  } else if (element.rfind("atom:", 0) == 0) {
    int i = std::stoi(element.substr(5));
    if (i < 0 || i >= static_cast<int>(p.atoms.size())) {
      std::cerr << "atom index out of range (have " << p.atoms.size() << " atoms)\n";
      return 1;
    }
    u = p.atoms[i];
  } else {
    std::cerr << "--element must be 'top' or 'atom:<i>'\n";
    return 1;
  }
  std::uint64_t cap = g.cap;
  mpz_class red = p.chain_count[u];
  if (huge && red.fits_ulong_p()) cap = std::max<std::uint64_t>(cap, red.get_ui() + 1);
  ncg::HurwitzAction act(p);
  auto reds = p.reduced_decompositions(u, cap);
  bool keep = !huge;
  auto stats = act.orbit(reds[0], cap, keep);
  bool transitive;
  if (keep) {
    std::vector<std::uint64_t> expected;
    for (const auto& t : reds) expected.push_back(act.pack(t));
    std::sort(expected.begin(), expected.end());
    transitive = expected == stats.tuples;
  } else {
    transitive = mpz_class(static_cast<unsigned long>(stats.size)) == red;
  }
  if (g.report == "json") {
    json doc;
    doc["schema_version"] = 1;
    doc["group"] = e.name;
    doc["element"] = element;
    doc["red_count"] = red.get_str();
    doc["orbit_size"] = stats.size;
    doc["bfs_depth"] = stats.bfs_depth;
    doc["transitive"] = transitive;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "group " << e.name << "\nelement " << element << "\n|Red_R| "
              << red.get_str() << "\norbit " << stats.size << "\ndepth "
              << stats.bfs_depth << "\ntransitive " << (transitive ? "yes" : "no")
              << "\n";
  }
  return transitive ? 0 : 3;
}

int cmd_nf(const GlobalOpts& g, const std::string& group, const std::string& word) {
  ncg::GroupCatalogEntry e = ncg::load_group(group, g.catalog);
  ncg::IntervalPoset p = ncg::build_interval(e, g.threads);
  ncg::DualBraidMonoid m(p);
  // comma-separated tokens: bare integers are simple indices, rK is atom K
  std::vector<int> w;
  std::stringstream ss(word);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int s;
    if (tok[0] == 'r') {
      int a = std::stoi(tok.substr(1)) - 1;
      if (a < 0 || a >= static_cast<int>(p.atoms.size())) {
        std::cerr << "atom name out of range: " << tok << "\n";
        return 1;
      }
      s = p.atoms[a];
    } else {
      s = std::stoi(tok);
      if (s < 0 || s >= p.size()) {
        std::cerr << "simple index out of range: " << tok << "\n";
        return 1;
      }
    }
    w.push_back(s);
  }
  auto nf = m.normal_form(w);
  if (g.report == "json") {
    json doc;
    doc["schema_version"] = 1;
    doc["group"] = e.name;
    doc["input"] = word;
    doc["normal_form"] = nf.factors;
    doc["length"] = nf.factors.size();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "normal form: " << (nf.factors.empty() ? "1" : join_ints(nf.factors))
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncrossing-partition lattices and dual braid monoids, exactly"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  if (g.threads <= 0) g.threads = 1;
  app.add_option("--catalog", g.catalog, "catalog directory (overrides default)");
  app.add_option("--cap", g.cap, "enumeration cap (tuples / decompositions)");
  app.add_option("--threads", g.threads, "worker threads");
  app.add_option("--report", g.report, "report format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string group, level = "quick", what, format = "text", path, element = "top",
                     word;
  bool huge = false;

  auto* info = app.add_subcommand("info", "print group invariants");
  info->add_option("group", group, "group name")->required();

  auto* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("group", group, "group name")->required();
  verify->add_option("--level", level, "quick|full|huge")
      ->check(CLI::IsMember({"quick", "full", "huge"}));

  auto* exp = app.add_subcommand("export", "export poset/presentation/orbit");
  exp->add_option("group", group, "group name")->required();
  exp->add_option("--what", what, "poset|presentation|orbit")
      ->required()
      ->check(CLI::IsMember({"poset", "presentation", "orbit"}));
  exp->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  exp->add_option("--out", path, "output file ('-' = stdout)");

  auto* hur = app.add_subcommand("hurwitz", "Hurwitz orbit enumeration");
  hur->add_option("--group", group, "group name")->required();
  hur->add_option("--element", element, "top or atom:<i>");
  hur->add_flag("--huge", huge, "lift the cap to the known orbit size, count only");

  auto* nf = app.add_subcommand("nf", "normal form of a word");
  nf->add_option("group", group, "group name")->required();
  nf->add_option("word", word, "comma-separated simple indices or atom names r1..rk")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex);
    return code == 0 ? 0 : 1;
  }

  try {
    if (info->parsed()) return cmd_info(g, group);
    if (verify->parsed()) return cmd_verify(g, group, level);
    if (exp->parsed()) return cmd_export(g, group, what, format, path);
    if (hur->parsed()) return cmd_hurwitz(g, group, element, huge);
    if (nf->parsed()) return cmd_nf(g, group, word);
  } catch (const ncg::CapExceeded& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 4;
  } catch (const ncg::UnknownGroup& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const ncg::CatalogValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const ncg::NotCoxeter& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const ncg::CardinalMismatch& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  } catch (const ncg::FormulaMismatch& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  return 1;
}
