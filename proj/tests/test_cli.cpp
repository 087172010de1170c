#include <unistd.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "grs/cli.hpp"
#include "grs/error.hpp"
#include "grs/io.hpp"
#include "grs/lattice.hpp"
#include "oracles.hpp"

using namespace grs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;

  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("grs-lab-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  io::Json report() const {
    // With --trace-stages the report follows the stage lines.
    const auto start = out.find("{\n");
    return io::Json::parse(out.substr(start == std::string::npos ? 0 : start));
  }
};

Run lab(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.find(needle) != std::string::npos) ++n;
  }
  return n;
}

// Node statements are the lines "  <id>;" or "  <id> [label=...];".
std::size_t count_nodes(const std::string& dot) {
  std::size_t n = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    if (line.find("--") == std::string::npos && line.find("->") == std::string::npos &&
        line.find('{') == std::string::npos && line.find('}') == std::string::npos &&
        line.find("rankdir") == std::string::npos) {
      ++n;
    }
  }
  return n;
}

lattice::Poset k22_poset() {
  const std::vector<std::pair<std::size_t, std::size_t>> square{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  return lattice::length3_poset(2, 2, square);
}

}  // namespace

TEST_CASE("verify on a two-stage run passes every check") {
  const auto r = lab({"verify", "--f", "5,0", "--stages", "2"});
  CHECK(r.code == 0);
  const auto j = r.report();
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "verify");
  CHECK(j["passed"] == true);
  CHECK(j["results"]["stages_checked"] == 3);
  for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
  const auto ex = lab({"verify", "--f", "seed:4,len:12", "--stages", "12", "--exhaustive-chordless"});
  CHECK(ex.code == 0);
  CHECK(ex.out.find("no-chordless-4") != std::string::npos);
}

TEST_CASE("dichotomy on C4 reports a K22 copy") {
  TempDir dir;
  io::write_json(dir / "c4.json", io::graph_to_json(Graph::cycle(4)));
  const auto r = lab({"dichotomy", "--graph", dir / "c4.json", "--n", "4", "--witness",
                      dir / "w.json", "--dot", dir / "c4.dot"});
  CHECK(r.code == 0);
  CHECK(r.report()["results"]["kind"] == "k22-copy");
  CHECK(io::read_json(dir / "w.json")["kind"] == "k22-copy");
  const auto dot = io::read_text(dir / "c4.dot");
  CHECK(count_lines_with(dot, " -- ") == 4);

  io::write_json(dir / "p5.json", io::graph_to_json(Graph::path(5)));
  const auto p = lab({"dichotomy", "--graph", dir / "p5.json", "--n", "5"});
  CHECK(p.report()["results"]["kind"] == "chordless-path");
  CHECK(p.report()["results"]["witness"] == io::Json({0, 1, 2, 3, 4}));
}

TEST_CASE("lattice verify rejects the K22 poset") {
  TempDir dir;
  io::write_json(dir / "k22.json", io::lattice_to_json(k22_poset(), {}));
  const auto r = lab({"lattice", "verify", "--lattice", dir / "k22.json"});
  CHECK(r.code == 1);
  const auto j = r.report();
  CHECK(j["passed"] == false);
  bool meets_failed = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "meets") meets_failed = c["passed"] == false;
  }
  CHECK(meets_failed);
}

TEST_CASE("lattice commands on a generated fence") {
  TempDir dir;
  const auto g = lattice::generated_fence_lattice(5);
  io::write_json(dir / "fence.json", io::lattice_to_json(g.lattice.poset(), g.generators));
  const auto v = lab({"lattice", "verify", "--lattice", dir / "fence.json"});
  CHECK(v.code == 0);

  const auto f = lab({"lattice", "fences", "--lattice", dir / "fence.json", "--target", "5",
                      "--dot", dir / "hasse.dot"});
  CHECK(f.code == 0);
  const auto j = f.report();
  CHECK(j["results"]["fence"]["seq"] == io::Json(g.fence));
  CHECK(j["results"]["structural_maximum"] == 5);
  const auto dot = io::read_text(dir / "hasse.dot");
  CHECK(count_lines_with(dot, " -> ") == g.lattice.covers().size());

  const auto none = lab({"lattice", "fences", "--lattice", dir / "fence.json", "--target", "7"});
  CHECK(none.code == 0);
  CHECK(none.report()["results"]["fence"].is_null());

  const auto even = lab({"lattice", "fences", "--lattice", dir / "fence.json", "--target", "4"});
  CHECK(even.code == 2);
}

TEST_CASE("DOT shapes") {
  const auto k22 = io::graph_dot(pattern_graph(Pattern::k22()));
  CHECK(count_nodes(k22) == 4);
  CHECK(count_lines_with(k22, " -- ") == 4);

  const auto a3 = io::pattern_dot(Pattern::a(3));
  CHECK(count_nodes(a3) == 6);
  CHECK(count_lines_with(a3, " -- ") == 6);
  CHECK(a3.find("label=\"b2\"") != std::string::npos);

  const std::vector<lattice::LeqPair> diamond{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1},
                                              {0, 2}, {0, 3}, {1, 3}, {2, 3}};
  const auto hasse = io::hasse_dot(lattice::FiniteLattice::from_pairs(4, diamond));
  CHECK(count_nodes(hasse) == 4);
  CHECK(count_lines_with(hasse, " -> ") == 4);
  CHECK(hasse.find("rankdir=BT") != std::string::npos);
}

TEST_CASE("graph JSON round trip") {
  std::mt19937_64 rng(13);
  TempDir dir;
  for (int trial = 0; trial < 50; ++trial) {
    const Graph base = oracle::random_graph(rng, 1 + rng() % 9, 0.4);
    // Scatter the ids so stored order differs from numeric order.
    std::vector<Vertex> ids;
    for (Vertex v : base.vertices()) ids.push_back(v * 7 + static_cast<Vertex>(rng() % 5) * 100);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() != base.size()) continue;
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<Edge> es;
    for (const auto& e : base.edges()) es.push_back({ids[e.u], ids[e.v]});
    const Graph g(ids, es);

    io::write_json(dir / "g.json", io::graph_to_json(g));
    const Graph back = io::graph_from_json(io::read_json(dir / "g.json"));
    CHECK(std::equal(back.vertices().begin(), back.vertices().end(), g.vertices().begin(),
                     g.vertices().end()));
    CHECK(back.edges() == g.edges());
    io::write_json(dir / "h.json", io::graph_to_json(back));
    CHECK(io::read_text(dir / "g.json") == io::read_text(dir / "h.json"));
  }
}

TEST_CASE("lattice JSON round trip") {
  const auto g = lattice::generated_fence_lattice(3);
  const auto j = io::lattice_to_json(g.lattice.poset(), g.generators);
  const auto back = io::lattice_from_json(j);
  CHECK(back.poset.pairs() == g.lattice.poset().pairs());
  CHECK(back.generators == g.generators);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(io::graph_from_json(io::Json::parse(R"({"vertices":[0,1]})")), InvalidInput);
  CHECK_THROWS_AS(io::graph_from_json(io::Json::parse(R"({"vertices":[0,-1],"edges":[]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::graph_from_json(io::Json::parse(R"({"vertices":[0,1],"edges":[[0]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::graph_from_json(io::Json::parse(R"({"vertices":[0,0],"edges":[]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::lattice_from_json(io::Json::parse(R"({"n":2,"leq":[[0,5]]})")),
                  InvalidInput);
  TempDir dir;
  io::write_text(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(io::read_json(dir / "bad.json"), InvalidInput);
  CHECK_THROWS_AS(io::read_text(dir / "missing.json"), IoError);
  CHECK_THROWS_AS(io::write_text(dir / "no/such/dir/x.txt", "x"), IoError);
}

TEST_CASE("input errors exit with 2") {
  TempDir dir;
  CHECK(lab({}).code == 2);
  CHECK(lab({"frobnicate"}).code == 2);
  CHECK(lab({"verify", "--f", "5,x", "--stages", "2"}).code == 2);
  CHECK(lab({"verify", "--f", "seed:1", "--stages", "2"}).code == 2);
  CHECK(lab({"verify", "--f", "5", "--stages", "2"}).code == 2);  // f too short
  CHECK(lab({"verify", "--f", "5,0", "--stages", "2", "--bogus"}).code == 2);
  CHECK(lab({"dichotomy", "--graph", dir / "missing.json", "--n", "4"}).code == 2);
  CHECK(lab({"construct", "--f", "1,0", "--stages", "2", "--out", dir / "no/dir/g.json"}).code == 2);
  const auto cap = lab({"decode", "--f", "0,1,2", "--stages", "3", "--pattern", "A:5", "--query", "0"});
  CHECK(cap.code == 2);
  CHECK(cap.err.find("more stages") != std::string::npos);
  CHECK(lab({"--help"}).code == 0);
  CHECK(lab({"--jobs", "0", "mn-search", "--n", "3", "--max-size", "3"}).code == 2);
}

TEST_CASE("decode answers match the range of f") {
  TempDir dir;
  const auto r = lab({"decode", "--f", "seed:9,len:40", "--stages", "40", "--pattern", "A:4",
                      "--query", "0,1,2,3", "--dot", dir / "a4.dot"});
  CHECK(r.code == 0);
  const auto j = r.report();
  REQUIRE(j["results"]["answers"].size() == 4);
  for (const auto& a : j["results"]["answers"]) CHECK(a["decoded"] == a["in_range"]);
  CHECK(count_lines_with(io::read_text(dir / "a4.dot"), " -- ") == 10);
}

TEST_CASE("construct writes the graph and traces stages") {
  TempDir dir;
  const auto r = lab({"construct", "--f", "seed:3,len:8", "--stages", "8", "--out", dir / "g.json",
                      "--dot", dir / "g.dot", "--trace-stages"});
  CHECK(r.code == 0);
  CHECK(count_lines_with(r.out, "\"stage\":") == 9);
  const Graph g = io::graph_from_json(io::read_json(dir / "g.json"));
  CHECK(r.report()["results"]["vertices"] == g.size());
  CHECK(r.report()["parameters"]["seed"] == 3);
  CHECK(count_lines_with(io::read_text(dir / "g.dot"), " -- ") == g.edge_count());
}

TEST_CASE("identical inputs give byte-identical output") {
  TempDir a, b;
  const std::vector<std::string> tail{"--stages", "15", "--trace-stages"};
  auto args = [&](const TempDir& d) {
    std::vector<std::string> v{"construct", "--f", "seed:21,len:15", "--out", d / "g.json",
                               "--dot", d / "g.dot"};
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
  };
  const auto ra = lab(args(a));
  const auto rb = lab(args(b));
  CHECK(io::read_text(a / "g.json") == io::read_text(b / "g.json"));
  CHECK(io::read_text(a / "g.dot") == io::read_text(b / "g.dot"));
  // Reports differ only in the output path they echo.
  auto ja = ra.report();
  auto jb = rb.report();
  ja["parameters"].erase("out");
  jb["parameters"].erase("out");
  CHECK(ja == jb);

  const auto one = lab({"--jobs", "1", "mn-search", "--n", "4", "--max-size", "6"});
  const auto three = lab({"--jobs", "3", "mn-search", "--n", "4", "--max-size", "6",
                          "--report", a / "mn.json"});
  CHECK(one.code == 0);
  CHECK(one.report()["results"] == three.report()["results"]);
  CHECK(io::read_json(a / "mn.json") == three.report()["results"]);
  CHECK(three.report()["results"]["empirical_lower_bound"] == 6);
}

TEST_CASE("pipeline trace") {
  TempDir dir;
  io::write_json(dir / "k10.json", io::graph_to_json(Graph::complete(10)));
  const auto r = lab({"pipeline", "--graph", dir / "k10.json", "--n", "4"});
  CHECK(r.code == 0);
  const auto j = r.report();
  CHECK(j["results"]["outcome"] == "k22");
  CHECK(j["results"]["q"] == 8);
  CHECK(j["results"]["k22"]["pattern"] == "K22");
}
