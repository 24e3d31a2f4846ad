#include "order.hpp"

#include "budget.hpp"
#include "error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace latforge {

void BitRel::close_transitively() {
    for (int k = 0; k < n_; ++k) {
        const std::uint64_t* rk = row(k);
        for (int i = 0; i < n_; ++i) {
            if (get(i, k)) {
                std::uint64_t* ri = row(i);
                for (int w = 0; w < words_; ++w) ri[w] |= rk[w];
            }
        }
    }
}

BitRel BitRel::transposed() const {
    BitRel t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (get(i, j)) t.set(j, i);
    return t;
}

int BoundedOrder::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == name) return i;
    return -1;
}

int BoundedOrder::index_or_throw(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw input_error("unknown element '" + name + "'");
    return i;
}

namespace {

// Completes a reflexive-transitively closed relation into a BoundedOrder:
// antisymmetry, unique bounds, covers, heights.
BoundedOrder finish_order(std::vector<std::string> names, BitRel leq) {
    const int n = static_cast<int>(names.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (leq.get(i, j) && leq.get(j, i))
                throw input_error("cycle detected through '" + names[i] + "' and '" + names[j] + "'");

    std::vector<int> minimals, maximals;
    for (int i = 0; i < n; ++i) {
        bool is_min = true, is_max = true;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (leq.get(j, i)) is_min = false;
            if (leq.get(i, j)) is_max = false;
        }
        if (is_min) minimals.push_back(i);
        if (is_max) maximals.push_back(i);
    }
    if (minimals.size() != 1)
        throw input_error("order is not bounded: " + std::to_string(minimals.size()) + " minimal elements");
    if (maximals.size() != 1)
        throw input_error("order is not bounded: " + std::to_string(maximals.size()) + " maximal elements");

    BoundedOrder R;
    R.names = std::move(names);
    R.bottom = minimals[0];
    R.top = maximals[0];

    // covers: j covers i iff i<j and no k strictly between
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || !leq.get(i, j)) continue;
            bool cover = true;
            for (int k = 0; k < n && cover; ++k)
                if (k != i && k != j && leq.get(i, k) && leq.get(k, j)) cover = false;
            if (cover) R.covers.emplace_back(i, j);
        }
    }
    std::sort(R.covers.begin(), R.covers.end());

    R.height.assign(n, 0);
    R.depth.assign(n, 0);
    std::vector<int> topo(n);
    std::iota(topo.begin(), topo.end(), 0);
    std::stable_sort(topo.begin(), topo.end(), [&](int a, int b) {
        int ca = 0, cb = 0;
        for (int j = 0; j < n; ++j) {
            if (leq.get(j, a) && j != a) ++ca;
            if (leq.get(j, b) && j != b) ++cb;
        }
        return ca < cb;  // down-set size respects topological order
    });
    for (int x : topo)
        for (auto& [lo, hi] : R.covers)
            if (lo == x) R.height[hi] = std::max(R.height[hi], R.height[x] + 1);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        for (auto& [lo, hi] : R.covers)
            if (hi == *it) R.depth[lo] = std::max(R.depth[lo], R.depth[*it] + 1);

    R.leq = std::move(leq);
    return R;
}

} // namespace

BoundedOrder from_covers(const std::vector<std::string>& elements,
                         const std::vector<std::pair<std::string, std::string>>& cover_pairs) {
    if (elements.empty()) throw input_error("empty element list");
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
        if (!idx.emplace(elements[i], i).second)
            throw input_error("duplicate element '" + elements[i] + "'");
    }
    const int n = static_cast<int>(elements.size());
    BitRel leq(n);
    for (int i = 0; i < n; ++i) leq.set(i, i);
    for (auto& [lo, hi] : cover_pairs) {
        auto a = idx.find(lo), b = idx.find(hi);
        if (a == idx.end()) throw input_error("cover references unknown element '" + lo + "'");
        if (b == idx.end()) throw input_error("cover references unknown element '" + hi + "'");
        if (a->second == b->second) throw input_error("cycle detected through '" + lo + "'");
        leq.set(a->second, b->second);
    }
    leq.close_transitively();
    return finish_order(elements, std::move(leq));
}

BoundedOrder order_from_relations(std::vector<std::string> names,
                                  const std::vector<std::pair<int, int>>& le_pairs) {
    const int n = static_cast<int>(names.size());
    BitRel leq(n);
    for (int i = 0; i < n; ++i) leq.set(i, i);
    for (auto& [a, b] : le_pairs) leq.set(a, b);
    leq.close_transitively();
    return finish_order(std::move(names), std::move(leq));
}

Lattice as_lattice(const BoundedOrder& order) {
    const int n = order.size();
    const int w = order.leq.words();
    BitRel geq = order.leq.transposed();

    Lattice L;
    L.meet_tab.assign(static_cast<size_t>(n) * n, 0);
    L.join_tab.assign(static_cast<size_t>(n) * n, 0);
    std::vector<std::uint64_t> common(w);

    auto bound = [&](int a, int b, const BitRel& dir, bool is_join) -> int {
        const std::uint64_t* ra = dir.row(a);
        const std::uint64_t* rb = dir.row(b);
        for (int k = 0; k < w; ++k) common[k] = ra[k] & rb[k];
        for (int c = 0; c < n; ++c) {
            if (!((common[c >> 6] >> (c & 63)) & 1)) continue;
            const std::uint64_t* rc = dir.row(c);
            bool least = true;
            for (int k = 0; k < w && least; ++k)
                if (common[k] & ~rc[k]) least = false;
            if (least) return c;
        }
        std::ostringstream os;
        os << "not a lattice: {" << order.names[a] << ", " << order.names[b] << "} has no unique "
           << (is_join ? "least upper bound" : "greatest lower bound");
        throw semantic_error(os.str());
    };

    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            int j = bound(a, b, order.leq, true);
            int m = bound(a, b, geq, false);
            L.join_tab[static_cast<size_t>(a) * n + b] = L.join_tab[static_cast<size_t>(b) * n + a] =
                static_cast<std::uint16_t>(j);
            L.meet_tab[static_cast<size_t>(a) * n + b] = L.meet_tab[static_cast<size_t>(b) * n + a] =
                static_cast<std::uint16_t>(m);
        }
        budget_check();
    }
    L.order = order;
    return L;
}

std::vector<int> interval(const Lattice& L, int u, int v) {
    if (!L.order.le(u, v))
        throw semantic_error("interval: '" + L.name(u) + "' is not below '" + L.name(v) + "'");
    std::vector<int> out;
    for (int x = 0; x < L.n(); ++x)
        if (L.order.le(u, x) && L.order.le(x, v)) out.push_back(x);
    return out;
}

int length_of(const Lattice& L) { return L.order.height[L.top()]; }

// ---------------------------------------------------------------------------
// invariant refinement + backtracking searches
// ---------------------------------------------------------------------------

namespace {

struct Neighbors {
    std::vector<std::vector<int>> up, down;  // cover neighbors
};

Neighbors cover_neighbors(const BoundedOrder& A) {
    Neighbors nb;
    nb.up.resize(A.size());
    nb.down.resize(A.size());
    for (auto& [lo, hi] : A.covers) {
        nb.up[lo].push_back(hi);
        nb.down[hi].push_back(lo);
    }
    return nb;
}

// Iterated color refinement over the cover digraph, jointly compressed so the
// color ids are comparable between A and B (and stable across isomorphs).
void joint_refine(const BoundedOrder& A, const BoundedOrder& B,
                  std::vector<int>& ca, std::vector<int>& cb) {
    Neighbors na = cover_neighbors(A), nb = cover_neighbors(B);
    auto initial = [](const BoundedOrder& X, const Neighbors& nx) {
        std::vector<std::array<int, 4>> sig(X.size());
        for (int i = 0; i < X.size(); ++i)
            sig[i] = {X.height[i], X.depth[i], static_cast<int>(nx.up[i].size()),
                      static_cast<int>(nx.down[i].size())};
        return sig;
    };
    auto sa = initial(A, na);
    auto sb = initial(B, nb);
    {
        std::map<std::array<int, 4>, int> compress;
        for (auto& s : sa) compress.emplace(s, 0);
        for (auto& s : sb) compress.emplace(s, 0);
        int next = 0;
        for (auto& [k, v] : compress) v = next++;
        ca.resize(A.size());
        cb.resize(B.size());
        for (int i = 0; i < A.size(); ++i) ca[i] = compress[sa[i]];
        for (int i = 0; i < B.size(); ++i) cb[i] = compress[sb[i]];
    }
    using RoundSig = std::tuple<int, std::vector<int>, std::vector<int>>;
    int rounds = std::max(A.size(), B.size());
    for (int r = 0; r < rounds; ++r) {
        auto round_sig = [](const std::vector<int>& col, const Neighbors& nx, int i) {
            std::vector<int> up, down;
            for (int j : nx.up[i]) up.push_back(col[j]);
            for (int j : nx.down[i]) down.push_back(col[j]);
            std::sort(up.begin(), up.end());
            std::sort(down.begin(), down.end());
            return RoundSig{col[i], std::move(up), std::move(down)};
        };
        std::vector<RoundSig> ra(A.size()), rb(B.size());
        for (int i = 0; i < A.size(); ++i) ra[i] = round_sig(ca, na, i);
        for (int i = 0; i < B.size(); ++i) rb[i] = round_sig(cb, nb, i);
        std::map<RoundSig, int> compress;
        for (auto& s : ra) compress.emplace(s, 0);
        for (auto& s : rb) compress.emplace(s, 0);
        int next = 0;
        for (auto& [k, v] : compress) v = next++;
        std::vector<int> nca(A.size()), ncb(B.size());
        for (int i = 0; i < A.size(); ++i) nca[i] = compress[ra[i]];
        for (int i = 0; i < B.size(); ++i) ncb[i] = compress[rb[i]];
        if (nca == ca && ncb == cb) break;
        ca = std::move(nca);
        cb = std::move(ncb);
    }
}

// Order-isomorphism search A -> B; collects up to `limit` maps (0 = all).
std::vector<std::vector<int>> iso_search(const BoundedOrder& A, const BoundedOrder& B,
                                         std::size_t limit) {
    std::vector<std::vector<int>> results;
    if (A.size() != B.size()) return results;
    const int n = A.size();

    std::vector<int> ca, cb;
    joint_refine(A, B, ca, cb);
    std::map<int, int> count_a, count_b;
    for (int c : ca) ++count_a[c];
    for (int c : cb) ++count_b[c];
    if (count_a != count_b) return results;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        if (count_a[ca[x]] != count_a[ca[y]]) return count_a[ca[x]] < count_a[ca[y]];
        return A.height[x] < A.height[y];
    });

    std::vector<int> f(n, -1);
    std::vector<char> used(n, 0);
    std::uint64_t steps = 0;

    auto rec = [&](auto&& self, int k) -> bool {
        if (k == n) {
            results.push_back(f);
            return limit != 0 && results.size() >= limit;
        }
        int a = order[k];
        for (int b = 0; b < n; ++b) {
            if (used[b] || cb[b] != ca[a]) continue;
            if ((++steps & 0x3ff) == 0) budget_check();
            bool ok = true;
            for (int k2 = 0; k2 < k && ok; ++k2) {
                int a2 = order[k2];
                if (A.le(a, a2) != B.le(b, f[a2]) || A.le(a2, a) != B.le(f[a2], b)) ok = false;
            }
            if (!ok) continue;
            f[a] = b;
            used[b] = 1;
            if (self(self, k + 1)) return true;
            used[b] = 0;
            f[a] = -1;
        }
        return false;
    };
    rec(rec, 0);
    return results;
}

} // namespace

std::optional<IsoMap> order_isomorphism(const BoundedOrder& A, const BoundedOrder& B) {
    auto maps = iso_search(A, B, 1);
    if (maps.empty()) return std::nullopt;
    return IsoMap{MapKind::order_iso, std::move(maps[0])};
}

std::vector<std::vector<int>> order_automorphism_maps(const BoundedOrder& A, std::size_t limit) {
    auto maps = iso_search(A, A, limit);
    std::sort(maps.begin(), maps.end());
    return maps;
}

std::optional<IsoMap> zero_one_embedding(const Lattice& A, const Lattice& B) {
    const int n = A.n(), m = B.n();
    if (n > m) return std::nullopt;
    if (n == 1) {
        if (B.bottom() != B.top()) return std::nullopt;
        return IsoMap{MapKind::lattice_embedding, {B.bottom()}};
    }

    std::vector<int> order;  // linear extension by height
    for (int i = 0; i < n; ++i)
        if (i != A.bottom() && i != A.top()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return A.order.height[x] < A.order.height[y]; });

    std::vector<int> f(n, -1);
    std::vector<char> used(m, 0);
    f[A.bottom()] = B.bottom();
    used[B.bottom()] = 1;
    f[A.top()] = B.top();
    used[B.top()] = 1;
    if (B.bottom() == B.top()) return std::nullopt;

    std::vector<int> assigned = {A.bottom(), A.top()};
    std::uint64_t steps = 0;

    auto consistent = [&](int a, int b) {
        for (int a2 : assigned) {
            if (A.order.le(a, a2) != B.order.le(b, f[a2])) return false;
            if (A.order.le(a2, a) != B.order.le(f[a2], b)) return false;
        }
        // meets with assigned elements are already assigned (bottom-up order)
        for (int a2 : assigned) {
            int mm = A.meet(a, a2);
            if (mm != a && f[mm] >= 0 && B.meet(b, f[a2]) != f[mm]) return false;
            int jj = A.join(a, a2);
            if (jj != a && f[jj] >= 0 && B.join(b, f[a2]) != f[jj]) return false;
        }
        // pairs of assigned elements whose join/meet is the new element
        for (size_t i = 0; i < assigned.size(); ++i) {
            for (size_t j = i; j < assigned.size(); ++j) {
                int x = assigned[i], y = assigned[j];
                if (A.join(x, y) == a && B.join(f[x], f[y]) != b) return false;
                if (A.meet(x, y) == a && B.meet(f[x], f[y]) != b) return false;
            }
        }
        return true;
    };

    auto rec = [&](auto&& self, size_t k) -> bool {
        if (k == order.size()) return true;
        int a = order[k];
        for (int b = 0; b < m; ++b) {
            if (used[b]) continue;
            if (B.order.height[b] < A.order.height[a] || B.order.depth[b] < A.order.depth[a]) continue;
            if ((++steps & 0x3ff) == 0) budget_check();
            if (!consistent(a, b)) continue;
            f[a] = b;
            used[b] = 1;
            assigned.push_back(a);
            if (self(self, k + 1)) return true;
            assigned.pop_back();
            used[b] = 0;
            f[a] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;

    // full closure check (cheap; guards the incremental reasoning)
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (B.meet(f[x], f[y]) != f[A.meet(x, y)] || B.join(f[x], f[y]) != f[A.join(x, y)])
                throw semantic_error("internal: embedding closure check failed");
    return IsoMap{MapKind::lattice_embedding, std::move(f)};
}

std::string canonical_form(const BoundedOrder& A) {
    const int n = A.size();
    std::vector<int> ca, cb;
    joint_refine(A, A, ca, cb);

    // positions grouped by color (colors are iso-invariant)
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(), [&](int x, int y) { return ca[x] < ca[y]; });
    std::vector<int> pos_color(n);
    for (int k = 0; k < n; ++k) pos_color[k] = ca[verts[k]];

    std::string best;
    std::vector<int> perm(n, -1);  // position -> vertex
    std::vector<char> used(n, 0);
    std::string cur(static_cast<size_t>(n) * n, '0');
    std::uint64_t steps = 0;

    auto rec = [&](auto&& self, int k) -> void {
        if (k == n) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    cur[static_cast<size_t>(i) * n + j] = A.le(perm[i], perm[j]) ? '1' : '0';
            if (best.empty() || cur < best) best = cur;
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v] || ca[v] != pos_color[k]) continue;
            if ((++steps & 0x3ff) == 0) budget_check();
            if (!best.empty()) {
                // prefix prune: row/col k against best, restricted to first k+1 vertices
                bool worse = false, better = false;
                perm[k] = v;
                for (int i = 0; i <= k && !worse && !better; ++i) {
                    char a1 = A.le(perm[i], v) ? '1' : '0';
                    char b1 = best[static_cast<size_t>(i) * n + k];
                    if (a1 != b1) (a1 > b1 ? worse : better) = true;
                    if (worse || better) break;
                    char a2 = A.le(v, perm[i]) ? '1' : '0';
                    char b2 = best[static_cast<size_t>(k) * n + i];
                    if (a2 != b2) (a2 > b2 ? worse : better) = true;
                }
                if (worse) {
                    perm[k] = -1;
                    continue;
                }
            }
            perm[k] = v;
            used[v] = 1;
            self(self, k + 1);
            used[v] = 0;
            perm[k] = -1;
        }
    };
    rec(rec, 0);
    return best;
}

} // namespace latforge
