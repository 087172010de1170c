#include "grs/dump.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>

#include "grs/error.hpp"
#include "grs/search.hpp"

namespace grs::dump {

// ---------------------------------------------------------------------------
// StageView

Block StageView::block(std::size_t j) const {
  const Vertex first = j == 0 ? 0 : coding_[j - 1] + 1;
  return Block{first, coding_[j]};
}

std::size_t StageView::block_of(Vertex x) const {
  auto it = std::lower_bound(coding_.begin(), coding_.end(), x);
  return static_cast<std::size_t>(it - coding_.begin());
}

std::vector<Block> StageView::blocks() const {
  std::vector<Block> out;
  out.reserve(coding_.size());
  for (std::size_t j = 0; j < coding_.size(); ++j) out.push_back(block(j));
  return out;
}

bool StageView::is_coding(Vertex x) const {
  return std::binary_search(coding_.begin(), coding_.end(), x);
}

std::span<const Vertex> StageView::neighbors(Vertex x) const {
  if (x > k_ || x >= adj_->size()) return {};
  const auto& row = (*adj_)[x];
  auto end = std::upper_bound(row.begin(), row.end(), k_);
  return {row.data(), static_cast<std::size_t>(end - row.begin())};
}

bool StageView::has_edge(Vertex x, Vertex y) const {
  if (x > k_ || y > k_ || x >= adj_->size()) return false;
  const auto& row = (*adj_)[x];
  return std::binary_search(row.begin(), row.end(), y);
}

bool StageView::well_formed() const {
  if (coding_.size() != stage_ + 1 || coding_.back() != k_ || adj_->size() < k_ + 1u) {
    return false;
  }
  return std::adjacent_find(coding_.begin(), coding_.end(),
                            [](Vertex a, Vertex b) { return a >= b; }) == coding_.end();
}

Graph StageView::graph() const {
  std::vector<Vertex> vs(k_ + 1);
  std::vector<Edge> es;
  for (Vertex x = 0; x <= k_; ++x) {
    vs[x] = x;
    for (Vertex y : neighbors(x)) {
      if (x < y) es.push_back({x, y});
    }
  }
  return Graph(std::move(vs), es);
}

// ---------------------------------------------------------------------------
// ConstructionState

ConstructionState ConstructionState::init() {
  ConstructionState st;
  st.coding_ = {0};
  st.adj_.resize(1);
  return st;
}

ConstructionState ConstructionState::from_parts(std::size_t stage, Vertex k,
                                                std::vector<Vertex> coding,
                                                std::span<const Edge> edges) {
  ConstructionState st;
  st.stage_ = stage;
  st.k_ = k;
  st.coding_ = std::move(coding);
  st.adj_.resize(k + 1);
  for (const Edge& e : edges) {
    if (e.u > k || e.v > k || e.u == e.v) {
      throw InvalidInput("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                         " is not an edge over 0.." + std::to_string(k));
    }
    st.adj_[e.u].push_back(e.v);
    st.adj_[e.v].push_back(e.u);
  }
  for (auto& row : st.adj_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return st;
}

std::vector<Edge> ConstructionState::edges() const {
  std::vector<Edge> out;
  for (Vertex x = 0; x < adj_.size(); ++x) {
    for (Vertex y : adj_[x]) {
      if (x < y) out.push_back({x, y});
    }
  }
  return out;
}

std::size_t ConstructionState::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : adj_) total += row.size();
  return total / 2;
}

ConstructionState advance(ConstructionState st, Natural n, std::vector<Edge>* added) {
  const std::size_t s = st.stage_;
  const Vertex k = st.k_;
  auto& adj = st.adj_;

  // Every edge added below has its larger endpoint among the new vertices,
  // and new vertices are handled in ascending order, so the lists of the old
  // vertices stay sorted; only the new lists need sorting at the end.
  auto link = [&](Vertex lo, Vertex hi) {
    adj[lo].push_back(hi);
    adj[hi].push_back(lo);
    if (added) added->push_back({lo, hi});
  };

  if (n > s) {
    const Vertex fresh = k + 1;
    adj.resize(fresh + 1);
    for (Vertex c : st.coding_) link(c, fresh);
    st.coding_.push_back(fresh);
    st.k_ = fresh;
  } else {
    const std::size_t u = s + 1 - n;
    const Vertex first_new = k + 1;
    const Vertex last_new = static_cast<Vertex>(k + u + 1);
    adj.resize(last_new + 1);

    // Block n absorbs blocks n..s and is topped by the fresh coding vertex.
    const Vertex merged_first = n == 0 ? 0 : st.coding_[n - 1] + 1;
    for (Vertex x = merged_first; x <= k; ++x) link(x, first_new);

    st.coding_.resize(n);
    for (Vertex v = first_new; v <= last_new; ++v) {
      for (Vertex c : st.coding_) link(c, v);
      st.coding_.push_back(v);
    }
    st.k_ = last_new;
    for (Vertex v = first_new; v <= last_new; ++v) std::sort(adj[v].begin(), adj[v].end());
  }
  st.stage_ = s + 1;
  if (added) std::sort(added->begin(), added->end());
  return st;
}

// ---------------------------------------------------------------------------
// StagedHistory

StagedHistory::StagedHistory(std::vector<Natural> f, std::vector<StageRecord> records,
                             ConstructionState final_state)
    : f_(std::move(f)),
      records_(std::move(records)),
      final_(std::move(final_state)),
      final_graph_(final_.graph()) {
  if (records_.empty()) throw InvalidInput("a history needs at least the stage-0 record");
}

StageView StagedHistory::view(std::size_t s) const {
  const auto& r = records_.at(s);
  return StageView(r.stage, r.k, r.coding, final_.adjacency());
}

ConstructionState StagedHistory::state(std::size_t s) const {
  const StageView v = view(s);
  std::vector<Edge> es;
  for (Vertex x = 0; x <= v.k(); ++x) {
    for (Vertex y : v.neighbors(x)) {
      if (x < y) es.push_back({x, y});
    }
  }
  return ConstructionState::from_parts(v.stage(), v.k(), {v.coding().begin(), v.coding().end()},
                                       es);
}

StagedHistory run(std::span<const Natural> f, std::size_t stages) {
  if (f.size() < stages) {
    throw InvalidInput("f has " + std::to_string(f.size()) + " entries but " +
                       std::to_string(stages) + " stages were requested");
  }
  std::unordered_set<Natural> seen;
  for (std::size_t s = 0; s < stages; ++s) {
    if (!seen.insert(f[s]).second) {
      throw InvalidInput("f is not injective: value " + std::to_string(f[s]) + " repeats at index " +
                         std::to_string(s));
    }
  }

  std::vector<StageRecord> records;
  records.reserve(stages + 1);
  ConstructionState st = ConstructionState::init();
  records.push_back({0, st.k(), st.coding(), {}});
  for (std::size_t s = 0; s < stages; ++s) {
    std::vector<Edge> added;
    st = advance(std::move(st), f[s], &added);
    records.push_back({st.stage(), st.k(), st.coding(), std::move(added)});
  }
  return StagedHistory(std::vector<Natural>(f.begin(), f.begin() + stages), std::move(records),
                       std::move(st));
}

std::vector<Natural> seeded_permutation(std::uint64_t seed, std::size_t len) {
  std::vector<Natural> f(len);
  for (std::size_t i = 0; i < len; ++i) f[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(f.begin(), f.end(), rng);
  return f;
}

// ---------------------------------------------------------------------------
// Stage lemmas

namespace {

void check_greatest(const StageView& v, CheckList& out) {
  for (std::size_t j = 0; j < v.block_count(); ++j) {
    const Block b = v.block(j);
    for (Vertex x = b.first; x < b.last; ++x) {
      if (!v.has_edge(x, b.last)) {
        out.fail("greatest", {x, b.last}, "block member not adjacent to its coding vertex");
        return;
      }
    }
  }
  out.pass("greatest");
}

void check_codeconnection(const StageView& v, CheckList& out) {
  const auto c = v.coding();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (!v.has_edge(c[i], c[j])) {
        out.fail("codeconnection", {c[i], c[j]}, "coding vertices not adjacent");
        return;
      }
    }
  }
  out.pass("codeconnection");
}

void check_tracing(const StageView& v, CheckList& out) {
  for (Vertex d = 0; d < v.k(); ++d) {
    if (!v.has_edge(d, d + 1)) {
      out.fail("tracing", {d, d + 1}, "consecutive vertices not adjacent");
      return;
    }
  }
  out.pass("tracing");
}

// An edge x < y must stay inside one block unless x is a coding vertex. For a
// non-coding x it is enough to look at its largest neighbour.
void check_components(const StageView& v, CheckList& out) {
  for (Vertex x = 0; x <= v.k(); ++x) {
    if (v.is_coding(x)) continue;
    const Block b = v.block(v.block_of(x));
    const auto nb = v.neighbors(x);
    if (!nb.empty() && nb.back() > b.last) {
      const Vertex y = *std::upper_bound(nb.begin(), nb.end(), b.last);
      out.fail("components", {x, y}, "edge leaves the block from a non-coding vertex");
      return;
    }
  }
  out.pass("components");
}

// If x < y are adjacent and y's block does not contain x, x sees the whole
// block. Neighbours above x are walked one block at a time: because the list
// is sorted and duplicate-free, the block is fully covered iff its first and
// last members sit exactly size-1 positions apart.
void check_goup(const StageView& v, CheckList& out) {
  for (Vertex x = 0; x <= v.k(); ++x) {
    const auto nb = v.neighbors(x);
    const std::size_t own = v.block_of(x);
    auto it = std::upper_bound(nb.begin(), nb.end(), x);
    while (it != nb.end()) {
      const std::size_t j = v.block_of(*it);
      const Block b = v.block(j);
      if (j != own) {
        const auto remaining = static_cast<std::size_t>(nb.end() - it);
        const bool covered =
            *it == b.first && remaining >= b.size() && *(it + (b.size() - 1)) == b.last;
        if (!covered) {
          Vertex z = b.first;
          while (std::binary_search(nb.begin(), nb.end(), z)) ++z;
          out.fail("goup", {x, *it, z}, "x sees y but misses z in y's block");
          return;
        }
      }
      it = std::upper_bound(it, nb.end(), b.last);
    }
  }
  out.pass("goup");
}

}  // namespace

CheckList check_stage_lemmas(const StageView& v) {
  CheckList out;
  if (!v.well_formed()) {
    out.fail("state", {v.stage(), v.k()},
             "coding list must have stage+1 strictly increasing entries ending at k");
    for (const char* name : {"greatest", "codeconnection", "tracing", "components", "goup"}) {
      out.fail(name, {}, "not checked: malformed state");
    }
    return out;
  }
  out.pass("state");
  check_greatest(v, out);
  check_codeconnection(v, out);
  check_tracing(v, out);
  check_components(v, out);
  check_goup(v, out);
  return out;
}

std::optional<PathSeq> check_no_chordless4(const StageView& v) {
  return find_chordless_path(v.graph(), 4);
}

// ---------------------------------------------------------------------------
// Coding limits and decoding

std::optional<std::pair<std::size_t, std::size_t>> coding_change_violation(
    const StagedHistory& h) {
  const auto& f = h.f();
  for (std::size_t s = 0; s < h.stages(); ++s) {
    const auto& before = h.record(s).coding;
    const auto& after = h.record(s + 1).coding;
    for (std::size_t k = 0; k <= s; ++k) {
      const bool changed = k >= before.size() || k >= after.size() || after[k] != before[k];
      if (changed != (f[s] <= k)) return std::make_pair(s, k);
    }
  }
  return std::nullopt;
}

CheckList check_history(const StagedHistory& h) {
  CheckList out;
  const auto& rs = h.records();

  bool ok = true;
  for (std::size_t s = 0; ok && s + 1 < rs.size(); ++s) {
    if (rs[s + 1].k <= rs[s].k) {
      out.fail("growth", {s, rs[s].k, rs[s + 1].k}, "k must strictly increase");
      ok = false;
    }
  }
  if (ok) out.pass("growth");

  // Restriction: nothing is ever added between two vertices of an earlier
  // stage, so E_t restricted to V_s equals E_s.
  ok = true;
  for (std::size_t s = 1; ok && s < rs.size(); ++s) {
    for (const Edge& e : rs[s].new_edges) {
      if (e.v <= rs[s - 1].k) {
        out.fail("restriction", {s, e.u, e.v}, "edge added between two existing vertices");
        ok = false;
        break;
      }
    }
  }
  if (ok) out.pass("restriction");

  ok = true;
  for (std::size_t s = 0; ok && s + 1 < rs.size(); ++s) {
    for (std::size_t k = 0; k < rs[s].coding.size(); ++k) {
      if (k >= rs[s + 1].coding.size() || rs[s + 1].coding[k] < rs[s].coding[k]) {
        out.fail("coding-monotone", {s, k}, "coding vertex at a fixed index decreased");
        ok = false;
        break;
      }
    }
  }
  if (ok) out.pass("coding-monotone");

  if (auto bad = coding_change_violation(h)) {
    out.fail("coding-change-law", {bad->first, bad->second},
             "c_{k,s+1} != c_{k,s} must hold exactly when f(s) <= k");
  } else {
    out.pass("coding-change-law");
  }
  return out;
}

std::optional<Vertex> stable_coding(const StagedHistory& h, std::size_t k) {
  const auto& last = h.record(h.stages()).coding;
  if (k >= last.size()) return std::nullopt;
  return last[k];
}

Embedding embed_via_coding(const StagedHistory& h, const Pattern& pattern) {
  const std::size_t need = pattern.vertex_count();
  const std::size_t have = h.stages() + 1;
  if (have < need) {
    const std::size_t more = need - have;
    throw CapacityError(pattern.name() + " needs " + std::to_string(need) +
                            " stable coding vertices, the horizon has " + std::to_string(have) +
                            "; run " + std::to_string(more) + " more stages",
                        more);
  }
  Embedding e{pattern, {}};
  for (std::size_t i = 0; i < need; ++i) e.assignment.push_back(*stable_coding(h, i));
  if (auto why = embedding_violation(h.final_graph(), e)) {
    throw InternalContradiction("coding vertices failed to embed " + pattern.name() + ": " + *why);
  }
  return e;
}

DecodeContext DecodeContext::build(const Graph& host, Embedding embedding) {
  if (auto why = embedding_violation(host, embedding)) throw InvalidContext(*why);
  std::vector<Vertex> gprime;
  Vertex best = 0;
  for (std::size_t n = 0; n < embedding.pattern.side(); ++n) {
    best = n == 0 ? embedding.a(0) : std::max(best, embedding.a(n));
    gprime.push_back(best);
  }
  return DecodeContext(std::move(embedding), std::move(gprime));
}

bool decode_range(const DecodeContext& ctx, std::span<const Natural> f, Natural k) {
  if (k >= ctx.gprime().size()) {
    throw InvalidInput("query " + std::to_string(k) + " is beyond the embedded a-side (size " +
                       std::to_string(ctx.gprime().size()) + ")");
  }
  const std::size_t bound = ctx.gprime()[k];
  for (std::size_t x = 0; x <= bound && x < f.size(); ++x) {
    if (f[x] == k) return true;
  }
  return false;
}

}  // namespace grs::dump
