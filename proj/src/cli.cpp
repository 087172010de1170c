#include "grs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>

#include "grs/dump.hpp"
#include "grs/error.hpp"
#include "grs/finite_grs.hpp"
#include "grs/io.hpp"
#include "grs/lattice.hpp"
#include "grs/search.hpp"

namespace grs::cli {

namespace {

using io::Json;

struct Options {
  std::size_t jobs = 1;
  std::string f_text;
  std::size_t stages = 0;
  std::string out_path;
  std::string dot_path;
  bool trace_stages = false;
  bool exhaustive = false;
  std::string pattern;
  std::string query;
  std::string graph_path;
  std::size_t n = 0;
  std::string witness_path;
  std::size_t max_size = 0;
  std::string report_path;
  std::string lattice_path;
  std::size_t target = 0;
};

struct Report {
  explicit Report(std::string name) : command(std::move(name)) {}

  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  CheckList checks;
};

int emit(const Report& r, std::ostream& out) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = r.command;
  j["parameters"] = r.parameters;
  j["results"] = r.results;
  j["checks"] = io::to_json(r.checks);
  j["passed"] = r.checks.all_passed();
  out << j.dump(2) << "\n";
  return r.checks.all_passed() ? kExitOk : kExitCheckFailed;
}

std::uint64_t parse_natural(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end) {
    throw InvalidInput(std::string(what) + ": \"" + std::string(s) + "\" is not a natural number");
  }
  return v;
}

std::vector<std::uint64_t> parse_list(std::string_view s, const char* what) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_natural(s.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct FInput {
  std::vector<dump::Natural> values;
  std::optional<std::uint64_t> seed;
};

// "5,0,3" or "seed:N,len:T".
FInput parse_f(std::string_view s) {
  FInput in;
  if (s.starts_with("seed:")) {
    const auto comma = s.find(',');
    if (comma == std::string_view::npos || !s.substr(comma + 1).starts_with("len:")) {
      throw InvalidInput("--f: expected seed:N,len:T");
    }
    in.seed = parse_natural(s.substr(5, comma - 5), "--f seed");
    const auto len = parse_natural(s.substr(comma + 5), "--f len");
    in.values = dump::seeded_permutation(*in.seed, len);
    return in;
  }
  in.values = parse_list(s, "--f");
  return in;
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("GRS_LAB_JOBS")) {
    try {
      const auto v = parse_natural(env, "GRS_LAB_JOBS");
      if (v > 0) return v;
    } catch (const InvalidInput&) {
    }
  }
  return 1;
}

Json edges_json(const std::vector<Edge>& es) {
  Json j = Json::array();
  for (const auto& e : es) j.push_back({e.u, e.v});
  return j;
}

void echo_f(Report& r, const Options& o, const FInput& f) {
  r.parameters["f"] = o.f_text;
  if (f.seed) r.parameters["seed"] = *f.seed;
  r.parameters["f_values"] = f.values;
  r.parameters["stages"] = o.stages;
}

// Folds one stage's checks into a running list: a check fails overall at the
// first stage where it fails, and the witness is prefixed with that stage.
void absorb(CheckList& agg, const CheckList& stage_checks, std::size_t stage) {
  for (const auto& c : stage_checks.checks) {
    auto it = std::find_if(agg.checks.begin(), agg.checks.end(),
                           [&](const Check& a) { return a.name == c.name; });
    if (it == agg.checks.end()) {
      agg.checks.push_back({c.name, true, {}, {}});
      it = agg.checks.end() - 1;
    }
    if (!c.passed && it->passed) {
      it->passed = false;
      it->witness = {stage};
      it->witness.insert(it->witness.end(), c.witness.begin(), c.witness.end());
      it->note = "stage " + std::to_string(stage) + (c.note.empty() ? "" : ": " + c.note);
    }
  }
}

int run_construct(const Options& o, std::ostream& out) {
  Report r("construct");
  const auto f = parse_f(o.f_text);
  echo_f(r, o, f);
  const auto h = dump::run(f.values, o.stages);
  if (o.trace_stages) {
    for (const auto& rec : h.records()) {
      Json j;
      j["stage"] = rec.stage;
      j["k"] = rec.k;
      j["coding"] = rec.coding;
      j["new_edges"] = edges_json(rec.new_edges);
      out << j.dump() << "\n";
    }
  }
  const Graph& g = h.final_graph();
  io::write_json(o.out_path, io::graph_to_json(g));
  if (!o.dot_path.empty()) io::write_text(o.dot_path, io::graph_dot(g));
  r.parameters["out"] = o.out_path;
  r.results["vertices"] = g.size();
  r.results["edges"] = g.edge_count();
  r.results["k"] = h.final_state().k();
  r.results["coding"] = h.final_state().coding();
  return emit(r, out);
}

int run_verify(const Options& o, std::ostream& out) {
  Report r("verify");
  const auto f = parse_f(o.f_text);
  echo_f(r, o, f);
  r.parameters["exhaustive_chordless"] = o.exhaustive;
  const auto h = dump::run(f.values, o.stages);
  for (std::size_t s = 0; s <= h.stages(); ++s) {
    const auto v = h.view(s);
    CheckList stage = dump::check_stage_lemmas(v);
    if (o.exhaustive) {
      if (auto p = dump::check_no_chordless4(v)) {
        stage.fail("no-chordless-4", {p->verts.begin(), p->verts.end()});
      } else {
        stage.pass("no-chordless-4");
      }
    }
    absorb(r.checks, stage, s);
  }
  const auto hist = dump::check_history(h);
  r.checks.checks.insert(r.checks.checks.end(), hist.checks.begin(), hist.checks.end());
  r.results["vertices"] = h.final_graph().size();
  r.results["edges"] = h.final_graph().edge_count();
  r.results["stages_checked"] = h.stages() + 1;
  return emit(r, out);
}

int run_decode(const Options& o, std::ostream& out) {
  Report r("decode");
  const auto f = parse_f(o.f_text);
  echo_f(r, o, f);
  const auto pattern = Pattern::parse(o.pattern);
  const auto queries = parse_list(o.query, "--query");
  r.parameters["pattern"] = pattern.name();
  r.parameters["query"] = queries;
  const auto h = dump::run(f.values, o.stages);
  const auto e = dump::embed_via_coding(h, pattern);
  const auto ctx = dump::DecodeContext::build(h.final_graph(), e);
  const std::span<const dump::Natural> used(f.values.data(), o.stages);
  if (!o.dot_path.empty()) io::write_text(o.dot_path, io::pattern_dot(pattern));

  r.results["embedding"] = io::to_json(e);
  r.results["gprime"] = ctx.gprime();
  r.results["answers"] = Json::array();
  std::optional<std::uint64_t> wrong;
  for (auto k : queries) {
    const bool decoded = dump::decode_range(ctx, used, k);
    const bool truth = std::find(used.begin(), used.end(), k) != used.end();
    r.results["answers"].push_back({{"k", k}, {"decoded", decoded}, {"in_range", truth}});
    if (decoded != truth && !wrong) wrong = k;
  }
  if (wrong) {
    r.checks.fail("decode-agrees", {*wrong}, "decoded answer differs from f's range");
  } else {
    r.checks.pass("decode-agrees");
  }
  return emit(r, out);
}

Json witness_json(const finite::DichotomyWitness& w) {
  if (const auto* p = std::get_if<PathSeq>(&w)) return io::to_json(*p);
  if (const auto* e = std::get_if<Embedding>(&w)) return io::to_json(*e);
  return nullptr;
}

int run_dichotomy(const Options& o, std::ostream& out) {
  Report r("dichotomy");
  r.parameters["graph"] = o.graph_path;
  r.parameters["n"] = o.n;
  const Graph g = io::graph_from_json(io::read_json(o.graph_path));
  const auto w = finite::dichotomy(g, o.n);
  const auto kind = finite::kind_name(finite::kind_of(w));
  r.results["kind"] = kind;
  r.results["witness"] = witness_json(w);
  if (const auto* p = std::get_if<PathSeq>(&w)) {
    if (p->size() == o.n && is_chordless(g, *p)) r.checks.pass("witness-valid");
    else r.checks.fail("witness-valid", {p->verts.begin(), p->verts.end()});
  } else if (const auto* e = std::get_if<Embedding>(&w)) {
    if (auto why = embedding_violation(g, *e)) {
      r.checks.fail("witness-valid", {e->assignment.begin(), e->assignment.end()}, *why);
    } else {
      r.checks.pass("witness-valid");
    }
  }
  if (!o.witness_path.empty()) {
    io::write_json(o.witness_path, Json{{"kind", kind}, {"witness", witness_json(w)}});
  }
  if (!o.dot_path.empty()) io::write_text(o.dot_path, io::graph_dot(g));
  return emit(r, out);
}

int run_mn_search(const Options& o, std::ostream& out) {
  Report r("mn-search");
  r.parameters["n"] = o.n;
  r.parameters["max_size"] = o.max_size;
  r.parameters["jobs"] = o.jobs;
  const auto m = finite::estimate_min_m(o.n, o.max_size, o.jobs);
  Json j;
  j["n"] = m.n;
  j["sizes"] = Json::array();
  for (const auto& row : m.sizes) {
    Json s;
    s["size"] = row.size;
    s["graphs"] = row.graphs;
    s["neither"] = row.neither;
    s["example"] = row.example ? io::graph_to_json(*row.example) : Json(nullptr);
    j["sizes"].push_back(std::move(s));
  }
  j["empirical_lower_bound"] = m.empirical_lower_bound();
  if (!o.report_path.empty()) io::write_json(o.report_path, j);
  r.results = std::move(j);
  return emit(r, out);
}

int run_pipeline_cmd(const Options& o, std::ostream& out) {
  Report r("pipeline");
  r.parameters["graph"] = o.graph_path;
  r.parameters["n"] = o.n;
  const Graph g = io::graph_from_json(io::read_json(o.graph_path));
  const auto t = finite::run_pipeline(g, o.n);
  Json& j = r.results;
  j["n"] = t.n;
  j["q"] = t.q;
  j["vertex_count"] = t.vertex_count;
  j["direct_path"] = t.direct_path ? io::to_json(*t.direct_path) : Json(nullptr);
  j["max_edges_on_path"] = t.max_edges_on_path;
  j["edge_bound_holds"] = t.edge_bound_holds;
  j["histogram"] = Json::array();
  for (const auto& [c, count] : t.histogram) {
    j["histogram"].push_back({{"color", c.name()}, {"count", count}});
  }
  if (t.certificate) {
    j["certificate"] = {{"subset", t.certificate->subset}, {"color", t.certificate->color.name()}};
  } else {
    j["certificate"] = nullptr;
  }
  j["k22"] = t.k22 ? io::to_json(*t.k22) : Json(nullptr);
  if (t.greedy) {
    j["greedy"] = {{"anchors", t.greedy->anchors},
                   {"route", t.greedy->route},
                   {"picks", t.greedy->picks},
                   {"path", io::to_json(t.greedy->path)},
                   {"progress_bound_holds", t.greedy->progress_bound_holds()}};
  } else {
    j["greedy"] = nullptr;
  }
  j["outcome"] = t.outcome;

  if (!t.direct_path) {
    if (t.edge_bound_holds) r.checks.pass("edge-bound");
    else r.checks.fail("edge-bound", {t.max_edges_on_path}, "an increasing path has more than n-2 edges");
  }
  if (t.k22) {
    if (auto why = embedding_violation(g, *t.k22)) r.checks.fail("k22-valid", {}, *why);
    else r.checks.pass("k22-valid");
  }
  if (t.greedy) {
    if (t.greedy->progress_bound_holds()) r.checks.pass("greedy-progress");
    else r.checks.fail("greedy-progress", {t.greedy->picks.begin(), t.greedy->picks.end()});
    if (is_chordless(g, t.greedy->path)) r.checks.pass("path-chordless");
    else r.checks.fail("path-chordless", {t.greedy->path.verts.begin(), t.greedy->path.verts.end()});
  }
  return emit(r, out);
}

int run_lattice_verify(const Options& o, std::ostream& out) {
  Report r("lattice verify");
  r.parameters["lattice"] = o.lattice_path;
  auto file = io::lattice_from_json(io::read_json(o.lattice_path));
  r.results["elements"] = file.poset.size();
  r.checks = lattice::validate_lattice(file.poset);
  if (!r.checks.all_passed()) {
    r.checks.fail("length3", {}, "not checked");
    r.checks.fail("no-double-cover", {}, "not checked");
    return emit(r, out);
  }
  const auto lat = lattice::FiniteLattice::from_poset(file.poset);
  if (lattice::check_length3(lat)) {
    r.checks.pass("length3");
  } else {
    std::vector<std::uint64_t> bad;
    for (lattice::Element x = 0; x < lat.size() && bad.empty(); ++x) {
      if (!lat.is_bound(x) && !lat.is_atom(x) && !lat.is_coatom(x)) bad.push_back(x);
    }
    r.checks.fail("length3", bad, "element is neither an atom nor a coatom");
  }
  if (auto w = lattice::check_no_double_cover(lat)) {
    r.checks.fail("no-double-cover", {w->begin(), w->end()});
  } else {
    r.checks.pass("no-double-cover");
  }
  if (!file.generators.empty()) {
    try {
      const auto ranks = lattice::closure_and_rank(lat, file.generators);
      r.checks.pass("generates");
      r.results["max_rank"] = ranks.max_rank();
    } catch (const CoverageError& e) {
      r.checks.fail("generates", {e.unreached().begin(), e.unreached().end()}, e.what());
    }
  }
  return emit(r, out);
}

int run_lattice_fences(const Options& o, std::ostream& out) {
  Report r("lattice fences");
  r.parameters["lattice"] = o.lattice_path;
  r.parameters["target"] = o.target;
  const auto file = io::lattice_from_json(io::read_json(o.lattice_path));
  if (file.generators.empty()) throw InvalidInput("lattice file lists no generators");
  const auto lat = lattice::FiniteLattice::from_poset(file.poset);
  r.parameters["generators"] = file.generators;
  if (!o.dot_path.empty()) io::write_text(o.dot_path, io::hasse_dot(lat));

  const auto ranks = lattice::closure_and_rank(lat, file.generators);
  const auto tree = lattice::build_tree(lat, ranks, ranks.max_rank());
  r.checks = lattice::check_tree_properties(lat, ranks, tree);
  r.results["max_rank"] = ranks.max_rank();
  r.results["tree_nodes"] = tree.nodes().size();
  r.results["structural_maximum"] = lattice::structural_maximum(tree);
  const auto leaves = tree.maximal_branches();
  r.results["deepest_branch"] = leaves.empty() ? Json::array() : Json(tree.branch(leaves.front()));

  const auto fence = lattice::find_fences(lat, file.generators, o.target);
  if (fence) {
    r.results["fence"] = {{"seq", fence->seq},
                          {"length", fence->length()},
                          {"branch", fence->branch},
                          {"reversed", fence->reversed}};
    if (auto why = lattice::fence_violation(lat.poset(), fence->seq)) {
      r.checks.fail("fence-valid", {fence->seq.begin(), fence->seq.end()}, *why);
    } else {
      r.checks.pass("fence-valid");
    }
  } else {
    r.results["fence"] = nullptr;
  }
  return emit(r, out);
}

bool is_check_failure(const Error& e) {
  return e.kind() == "internal-contradiction" || e.kind() == "structural" ||
         e.kind() == "extraction-failure";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.jobs = default_jobs();

  CLI::App app{"Dump graphs, the finite chordless-path dichotomy and lattice fences",
               "grs-lab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--jobs", o.jobs, "Worker threads for searches (default GRS_LAB_JOBS or 1)")
      ->check(CLI::PositiveNumber);

  auto add_f = [&](CLI::App* sub) {
    sub->add_option("--f", o.f_text, "Comma list, or seed:N,len:T for a seeded permutation")
        ->required();
    sub->add_option("--stages", o.stages, "Number of stages T")->required();
  };

  auto* construct = app.add_subcommand("construct", "Run the staged construction and save the graph");
  add_f(construct);
  construct->add_option("--out", o.out_path, "Graph JSON output")->required();
  construct->add_option("--dot", o.dot_path, "DOT output");
  construct->add_flag("--trace-stages", o.trace_stages, "Print one JSON line per stage");

  auto* verify = app.add_subcommand("verify", "Check the stage lemmas on every stage");
  add_f(verify);
  verify->add_flag("--exhaustive-chordless", o.exhaustive, "Also search every stage for a chordless 4-path");

  auto* decode = app.add_subcommand("decode", "Decode range membership through an embedded pattern");
  add_f(decode);
  decode->add_option("--pattern", o.pattern, "A:k or Kkk:k")->required();
  decode->add_option("--query", o.query, "Comma list of values to decode")->required();
  decode->add_option("--dot", o.dot_path, "DOT output of the pattern");

  auto* dich = app.add_subcommand("dichotomy", "Chordless n-path or K22 copy in a traceable graph");
  dich->add_option("--graph", o.graph_path, "Graph JSON")->required();
  dich->add_option("--n", o.n, "Path length n")->required();
  dich->add_option("--witness", o.witness_path, "Witness JSON output");
  dich->add_option("--dot", o.dot_path, "DOT output of the graph");

  auto* mn = app.add_subcommand("mn-search", "Enumerate traceable graphs for Neither instances");
  mn->add_option("--n", o.n, "Path length n")->required();
  mn->add_option("--max-size", o.max_size, "Largest graph size")->required();
  mn->add_option("--report", o.report_path, "Report JSON output");

  auto* pipe = app.add_subcommand("pipeline", "Table, colouring, homogeneous set, extraction");
  pipe->add_option("--graph", o.graph_path, "Graph JSON")->required();
  pipe->add_option("--n", o.n, "Path length n")->required();

  auto* lat = app.add_subcommand("lattice", "Length-3 lattices and fences");
  lat->require_subcommand(1);
  auto* fences = lat->add_subcommand("fences", "Extract a fence of the given odd length");
  fences->add_option("--lattice", o.lattice_path, "Lattice JSON")->required();
  fences->add_option("--target", o.target, "Fence length (odd)")->required();
  fences->add_option("--dot", o.dot_path, "DOT output of the Hasse diagram");
  auto* lverify = lat->add_subcommand("verify", "Lattice axioms, length 3, double covers");
  lverify->add_option("--lattice", o.lattice_path, "Lattice JSON")->required();

  std::vector<const char*> argv{"grs-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*construct) return run_construct(o, out);
    if (*verify) return run_verify(o, out);
    if (*decode) return run_decode(o, out);
    if (*dich) return run_dichotomy(o, out);
    if (*mn) return run_mn_search(o, out);
    if (*pipe) return run_pipeline_cmd(o, out);
    if (*fences) return run_lattice_fences(o, out);
    if (*lverify) return run_lattice_verify(o, out);
  } catch (const CapacityError& e) {
    err << "error (" << e.kind() << "): " << e.what() << "; run at least "
        << e.more_stages_needed() << " more stages\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error (" << e.kind() << "): " << e.what() << "\n";
    return is_check_failure(e) ? kExitCheckFailed : kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error (invalid-input): " << e.what() << "\n";
    return kExitInputError;
  }
  err << app.help();
  return kExitInputError;
}

}  // namespace grs::cli
