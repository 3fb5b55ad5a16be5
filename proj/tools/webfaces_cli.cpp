// Command-line front end: sample, exact, census, ratio, compare.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "svg.hpp"
#include "webfaces/arrangement.hpp"
#include "webfaces/census_io.hpp"
#include "webfaces/dirichlet.hpp"
#include "webfaces/exactmath.hpp"
#include "webfaces/mdiagram.hpp"
#include "webfaces/montecarlo.hpp"
#include "webfaces/sampler.hpp"
#include "webfaces/web.hpp"

#ifndef WEBFACES_VERSION
#define WEBFACES_VERSION "unknown"
#endif

using nlohmann::json;
using namespace webfaces;

namespace {

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
  }

  // Manifest next to file outputs; stdout runs carry it inside the JSON.
  void write_manifest(const json& m) const {
    if (path.empty() || path == "-") return;
    std::ofstream f(path + ".manifest.json");
    if (!f) throw std::runtime_error("cannot write manifest for " + path);
    f << m.dump(2) << '\n';
  }
};

json manifest(const std::string& command, const json& config) {
  return {{"command", command}, {"version", WEBFACES_VERSION}, {"config", config}};
}

LatticePointEZ parse_point(const std::string& s) {
  static const std::regex re(R"(\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw std::invalid_argument("bad point: " + s);
  return {std::stoll(m[1]), std::stoll(m[2])};
}

std::string rat(const Rational& r) { return r.str(); }

std::string format_integral(const IntegralValue& v) {
  std::ostringstream os;
  bool any = false;
  if (v.c_sqrt3 != 0) {
    os << rat(v.c_sqrt3) << "*sqrt(3)";
    any = true;
  }
  if (v.c_pi != 0) {
    if (any) os << (v.c_pi > 0 ? " + " : " - ") << rat(v.c_pi > 0 ? v.c_pi : Rational(-v.c_pi));
    else os << rat(v.c_pi);
    os << "*pi";
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

void print_exact(const std::string& label, const ExactValue& v) {
  std::cout << label << " = " << v.to_string() << " ~ " << v.decimal(20) << '\n';
}

// Points can come as "1 1" or "(1,1)"; consume one point from args[i...].
LatticePointEZ take_point(const std::vector<std::string>& args, std::size_t& i) {
  if (i < args.size() && args[i].find(',') != std::string::npos) return parse_point(args[i++]);
  if (i + 1 < args.size()) {
    LatticePointEZ p{std::stoll(args[i]), std::stoll(args[i + 1])};
    i += 2;
    return p;
  }
  throw std::invalid_argument("missing point");
}

int cmd_exact(const std::vector<std::string>& q, const std::string& mode, const std::string& offset) {
  if (q.empty()) throw std::invalid_argument("empty query");
  const std::string& what = q[0];
  std::size_t i = 1;
  if (what == "Ginf") {
    const auto p = take_point(q, i);
    print_exact("Ginf(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")", green_infinity(p));
  } else if (what == "GW") {
    const auto z = take_point(q, i);
    const auto z0 = take_point(q, i);
    print_exact("GW", green_wedge(z, z0));
  } else if (what == "h") {
    const auto a = take_point(q, i);
    const auto z = take_point(q, i);
    print_exact("h_(" + std::to_string(a.x) + "," + std::to_string(a.y) + ")(" + std::to_string(z.x) + "," +
                    std::to_string(z.y) + ")",
                h_point(a, z));
  } else if (what == "g") {
    const auto z = take_point(q, i);
    const GResult r = g_value(z, mode == "quadrature" ? GMode::Quadrature : GMode::Series);
    std::printf("g(%lld,%lld) = %.12f +- %.2e (%s, %d, converged=%s)\n", static_cast<long long>(z.x),
                static_cast<long long>(z.y), r.value, r.error_bound, mode.c_str(), r.terms,
                r.converged ? "yes" : "no");
  } else if (what == "facetype") {
    if (q.size() < 2) throw std::invalid_argument("facetype needs a type such as 1,1,2,1 B");
    std::string spec = q[1];
    if (q.size() >= 3) spec += ":" + q[2];
    const FaceType t = parse_face_type(spec);
    const FaceProbability p = face_type_probability(t, offset == "one" ? RedOffset::One : RedOffset::Two);
    std::printf("P%s = %.10e +- %.2e\n", to_string(t).c_str(), p.value, p.error_bound);
    for (const auto& f : p.factors) std::cout << "  " << f << '\n';
  } else if (what == "I") {
    if (q.size() < 2) throw std::invalid_argument("I needs m");
    const int m = std::stoi(q[1]);
    const IntegralValue v = integral_I(m);
    std::printf("I_%d = %s ~ %.15f\n", m, format_integral(v).c_str(), v.to_double());
  } else {
    throw std::invalid_argument("unknown query: " + what);
  }
  return 0;
}

json path_json(const LatticePath& p) {
  std::string s;
  for (Step st : p.steps()) s += static_cast<char>('1' + static_cast<int>(st));
  return s;
}

int cmd_sample(int n, std::uint64_t seed, const std::string& emit, const Output& out) {
  const LatticePath p = sample_path(n, seed);
  const json cfg = {{"n", n}, {"seed", seed}, {"emit", emit}};
  if (emit == "svg") {
    out.write(render_svg(Arrangement::build(build_mdiagram(p)), true));
    out.write_manifest(manifest("sample", cfg));
    return 0;
  }
  json j = {{"manifest", manifest("sample", cfg)}};
  if (emit == "tableau") {
    const Tableau3xN t = path_to_tableau(p);
    j["tableau"] = {t.rows[0], t.rows[1], t.rows[2]};
  } else if (emit == "path") {
    j["path"] = path_json(p);
  } else if (emit == "mdiagram") {
    const MDiagram d = build_mdiagram(p);
    json arcs = json::array();
    for (const Arc& a : d.arcs) arcs.push_back({{"start", a.start}, {"end", a.end}, {"color", std::string(1, color_char(a.color))}});
    json triples = json::array();
    for (const MTriple& t : d.triples) triples.push_back({t.first, t.middle, t.last});
    j["mdiagram"] = {{"n", d.n}, {"arcs", arcs}, {"triples", triples}};
  } else if (emit == "web") {
    const Web w = to_web(build_mdiagram(p));
    json edges = json::array();
    static const char* names[] = {"R", "B", "G"};
    for (const WebEdge& e : w.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"color", names[static_cast<int>(e.color)]}});
    j["web"] = {{"n", w.n}, {"vertex_count", w.vertex_count}, {"edges", edges}, {"rotation", w.rotation}};
  } else {
    throw std::invalid_argument("unknown --emit value: " + emit);
  }
  out.write(j.dump(2) + "\n");
  out.write_manifest(j["manifest"]);
  return 0;
}

int cmd_census(CensusConfig cfg, bool force_exhaustive, const std::string& format, const Output& out) {
  cfg.exhaustive = force_exhaustive || cfg.n <= 4;
  const CensusResult r = census(cfg);
  json j = to_json(r);
  json m = manifest("census", j["config"]);
  m["threads"] = resolve_threads(cfg.threads);
  if (format == "csv") {
    std::ostringstream os;
    write_census_csv(os, r);
    out.write(os.str());
  } else {
    j["manifest"] = m;
    out.write(j.dump(2) + "\n");
  }
  out.write_manifest(m);
  return 0;
}

int cmd_ratio(int d, int fa, int fb, const std::string& color, int cap, int trunc, const std::string& decay,
              const Output& out) {
  if (color != "R" && color != "B") throw std::invalid_argument("--color must be R or B");
  const StartColor c = color == "B" ? StartColor::Blue : StartColor::Red;
  RatioOptions opt;
  opt.L = cap;
  opt.T = trunc;
  json j;
  if (decay.empty()) {
    j = to_json(extension_ratio(d, fa, fb, c, opt), d, fa, fb, c);
  } else {
    json rows = json::array();
    std::vector<std::pair<double, double>> pts;
    std::stringstream ss(decay);
    for (std::string tok; std::getline(ss, tok, ',');) {
      const int dd = std::stoi(tok);
      const ExtensionRatio r = extension_ratio(dd, fa, fb, c, opt);
      rows.push_back(to_json(r, dd, fa, fb, c));
      pts.emplace_back(dd, r.ratio);
    }
    j = {{"rows", rows}, {"slope", decay_fit(pts)}};
  }
  j["manifest"] = manifest("ratio", {{"d", d}, {"fa", fa}, {"fb", fb}, {"color", color}, {"cap", cap}, {"trunc", trunc}, {"decay", decay}});
  out.write(j.dump(2) + "\n");
  out.write_manifest(j["manifest"]);
  return 0;
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return json::parse(f);
}

std::vector<Prediction> golden_cells(const CensusResult& got, const CensusResult& want) {
  const bool exact = got.config.exhaustive && want.config.exhaustive;
  const double N = static_cast<double>(got.samples);
  auto se = [&](const Tally& t) {
    if (exact || N == 0) return 0.0;
    const double mean = static_cast<double>(t.count) / N;
    return std::sqrt(std::max(0.0, N * (static_cast<double>(t.sum_sq) / N - mean * mean)));
  };
  std::vector<Prediction> cells;
  auto add = [&](const std::string& key, const Tally* g, const Tally* w) {
    Prediction p;
    p.key = key;
    p.observed = g ? static_cast<double>(g->count) : 0.0;
    p.expected = w ? static_cast<double>(w->count) : 0.0;
    p.std_error = g ? se(*g) : 0.0;
    cells.push_back(p);
  };
  std::set<std::pair<int, int>> sd;
  for (const auto& [k, t] : got.size_depth) sd.insert(k);
  for (const auto& [k, t] : want.size_depth) sd.insert(k);
  for (const auto& k : sd) {
    auto g = got.size_depth.find(k);
    auto w = want.size_depth.find(k);
    add("size " + std::to_string(k.first) + " depth " + std::to_string(k.second),
        g == got.size_depth.end() ? nullptr : &g->second, w == want.size_depth.end() ? nullptr : &w->second);
  }
  std::set<FaceType> ty;
  for (const auto& [k, t] : got.types) ty.insert(k);
  for (const auto& [k, t] : want.types) ty.insert(k);
  for (const auto& k : ty) {
    auto g = got.types.find(k);
    auto w = want.types.find(k);
    add(to_string(k), g == got.types.end() ? nullptr : &g->second, w == want.types.end() ? nullptr : &w->second);
  }
  Tally gf{got.faces, 0}, wf{want.faces, 0};
  add("faces", &gf, &wf);
  return cells;
}

int cmd_compare(const std::string& census_path, const std::string& golden_path, bool theory, int top,
                const std::string& offset, double min_expected, const Output& out) {
  const CensusResult got = census_from_json(read_json(census_path));
  std::vector<Prediction> cells;
  if (!golden_path.empty()) {
    cells = golden_cells(got, census_from_json(read_json(golden_path)));
  } else if (theory) {
    for (const Prediction& p : face_type_predictions(got, most_frequent_types(got, top),
                                                     offset == "one" ? RedOffset::One : RedOffset::Two))
      if (p.expected >= min_expected) cells.push_back(p);
  } else {
    throw std::invalid_argument("compare needs --golden or --theory");
  }
  const ComparisonReport rep = compare(cells);
  json j = to_json(rep);
  j["manifest"] = manifest("compare", {{"census", census_path}, {"golden", golden_path}, {"theory", theory},
                                       {"top", top}, {"offset", offset}, {"min_expected", min_expected}});
  out.write(j.dump(2) + "\n");
  out.write_manifest(j["manifest"]);
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random reduced sl3 webs: sampling, face census, exact values"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Output file (default stdout)");

  int n = 3;
  std::uint64_t seed = 1;
  std::string emit = "tableau";
  auto* sample = app.add_subcommand("sample", "Sample a uniform web");
  sample->add_option("--n", n, "Number of m's")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "Seed");
  sample->add_option("--emit", emit, "tableau, path, mdiagram, web or svg")
      ->check(CLI::IsMember({"tableau", "path", "mdiagram", "web", "svg"}));

  std::vector<std::string> query;
  std::string gmode = "series", offset = "two";
  auto* exact = app.add_subcommand("exact", "Exact values: Ginf x y | GW z z0 | h a z | g z | facetype tau C | I m");
  exact->add_option("query", query, "Query words")->required();
  exact->add_option("--mode", gmode, "g evaluation: series or quadrature")->check(CLI::IsMember({"series", "quadrature"}));
  exact->add_option("--offset", offset, "Red offset in face products: two or one")->check(CLI::IsMember({"two", "one"}));

  CensusConfig cfg;
  cfg.n = 3;
  cfg.sample_count = 100;
  bool exhaustive = false;
  std::string format = "json";
  auto* cen = app.add_subcommand("census", "Face census over uniform webs");
  cen->add_option("--n", cfg.n, "Number of m's")->check(CLI::PositiveNumber);
  cen->add_option("--samples", cfg.sample_count, "Sample count")->check(CLI::PositiveNumber);
  cen->add_option("--seed", cfg.seed, "Seed");
  cen->add_option("--eps", cfg.eps, "Mid-window margin as a fraction of 3n")->check(CLI::Range(0.0, 0.4999));
  cen->add_option("--depth-max", cfg.depth_max, "Depth cap")->check(CLI::PositiveNumber);
  cen->add_option("--type-max-len", cfg.type_max_len, "Longest face type tallied")->check(CLI::PositiveNumber);
  cen->add_option("--threads", cfg.threads, "Worker threads (default WEBFACES_THREADS or all cores)");
  cen->add_flag("--exhaustive", exhaustive, "Enumerate every path (automatic for n <= 4)");
  cen->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  int d = 0, fa = 1, fb = 1, cap = -1, trunc = -1;
  std::string color = "B", decay;
  auto* ratio = app.add_subcommand("ratio", "Extension ratio at depth d");
  ratio->add_option("--d", d, "Depth")->check(CLI::NonNegativeNumber);
  ratio->add_option("--fa", fa, "F_a")->check(CLI::PositiveNumber);
  ratio->add_option("--fb", fb, "F_b")->check(CLI::PositiveNumber);
  ratio->add_option("--color", color, "Start colour R or B");
  ratio->add_option("--cap", cap, "Cap L (default 2 * trunc)");
  ratio->add_option("--trunc", trunc, "Truncation T (default d + 200)");
  ratio->add_option("--decay", decay, "Comma-separated depths; also fits the log-log slope");

  std::string census_path, golden_path;
  bool theory = false;
  int top = 5;
  double min_expected = 25.0;
  auto* cmp = app.add_subcommand("compare", "z-scores of a census against a golden census or the face products");
  cmp->add_option("--census", census_path, "Census JSON")->required();
  cmp->add_option("--golden", golden_path, "Golden census JSON");
  cmp->add_flag("--theory", theory, "Compare the most frequent face types with the exact products");
  cmp->add_option("--top", top, "Number of face types")->check(CLI::PositiveNumber);
  cmp->add_option("--offset", offset, "Red offset: two or one")->check(CLI::IsMember({"two", "one"}));
  cmp->add_option("--min-expected", min_expected, "Skip cells with smaller expected count");

  CLI11_PARSE(app, argc, argv);
  const Output out{out_path};
  try {
    if (*sample) return cmd_sample(n, seed, emit, out);
    if (*exact) return cmd_exact(query, gmode, offset);
    if (*cen) return cmd_census(cfg, exhaustive, format, out);
    if (*ratio) return cmd_ratio(d, fa, fb, color, cap, trunc, decay, out);
    if (*cmp) return cmd_compare(census_path, golden_path, theory, top, offset, min_expected, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
