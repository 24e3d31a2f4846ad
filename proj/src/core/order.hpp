#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace latforge {

// Row-major bit matrix; row i holds the up-set of i under leq.
class BitRel {
public:
    BitRel() = default;
    explicit BitRel(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<size_t>(n) * words_, 0) {}

    int size() const { return n_; }
    bool get(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1; }
    void set(int i, int j) { row(i)[j >> 6] |= (std::uint64_t{1} << (j & 63)); }

    const std::uint64_t* row(int i) const { return bits_.data() + static_cast<size_t>(i) * words_; }
    std::uint64_t* row(int i) { return bits_.data() + static_cast<size_t>(i) * words_; }
    int words() const { return words_; }

    void close_transitively();
    BitRel transposed() const;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct BoundedOrder {
    std::vector<std::string> names;
    BitRel leq;                               // reflexive-transitive
    std::vector<std::pair<int, int>> covers;  // transitive reduction, lexicographically sorted
    int bottom = 0;
    int top = 0;
    std::vector<int> height;  // longest chain up from bottom
    std::vector<int> depth;   // longest chain down from top

    int size() const { return static_cast<int>(names.size()); }
    bool le(int a, int b) const { return leq.get(a, b); }
    bool lt(int a, int b) const { return a != b && leq.get(a, b); }
    int index_of(const std::string& name) const;  // -1 if absent
    int index_or_throw(const std::string& name) const;
};

// Builds the order from a cover (or any acyclic) relation; bottom/top are the
// unique minimal/maximal elements, error otherwise.
BoundedOrder from_covers(const std::vector<std::string>& elements,
                         const std::vector<std::pair<std::string, std::string>>& cover_pairs);

// Same, but from an arbitrary (not-yet-closed) leq seed given by index pairs.
BoundedOrder order_from_relations(std::vector<std::string> names,
                                  const std::vector<std::pair<int, int>>& le_pairs);

struct Lattice {
    BoundedOrder order;
    std::vector<std::uint16_t> meet_tab;  // n*n
    std::vector<std::uint16_t> join_tab;

    int n() const { return order.size(); }
    int meet(int a, int b) const { return meet_tab[static_cast<size_t>(a) * n() + b]; }
    int join(int a, int b) const { return join_tab[static_cast<size_t>(a) * n() + b]; }
    int bottom() const { return order.bottom; }
    int top() const { return order.top; }
    const std::string& name(int i) const { return order.names[i]; }
    int index_of(const std::string& s) const { return order.index_of(s); }
};

// Fills the meet/join tables; throws semantic_error naming a witness pair if
// some pair lacks a unique lub or glb.
Lattice as_lattice(const BoundedOrder& order);

// {x : u <= x <= v}; error if u is not below v.
std::vector<int> interval(const Lattice& L, int u, int v);

// Number of covers in a longest chain.
int length_of(const Lattice& L);

enum class MapKind { order_iso, lattice_embedding, lattice_iso };

struct IsoMap {
    MapKind kind;
    std::vector<int> to;  // index in A -> index in B
};

std::optional<IsoMap> order_isomorphism(const BoundedOrder& A, const BoundedOrder& B);

// All order-automorphisms (identity always present, deterministic order).
std::vector<std::vector<int>> order_automorphism_maps(const BoundedOrder& A, std::size_t limit = 0);

// Injective meet/join-preserving map with f(0)=0, f(1)=1, if one exists.
std::optional<IsoMap> zero_one_embedding(const Lattice& A, const Lattice& B);

// Canonical byte string of the order up to isomorphism (for dedup).
std::string canonical_form(const BoundedOrder& A);

} // namespace latforge
