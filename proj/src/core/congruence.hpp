#pragma once

#include "order.hpp"

#include <utility>
#include <vector>

namespace latforge {

// A partition of a lattice's elements in normalized form: block ids are
// assigned by first occurrence, so equal partitions compare equal.
struct Congruence {
    std::vector<int> block;  // element -> block id
    int num_blocks = 0;

    bool collapses(int a, int b) const { return block[a] == block[b]; }
    bool is_zero() const { return num_blocks == static_cast<int>(block.size()); }
    bool is_unit() const { return num_blocks == 1; }
    auto operator<=>(const Congruence&) const = default;
};

Congruence normalize_partition(const std::vector<int>& block_of);
Congruence zero_congruence(int n);
Congruence unit_congruence(int n);

// Smallest congruence collapsing a and b (worklist closure under the
// meet/join compatibility rules).
Congruence principal_congruence(const Lattice& L, int a, int b);

bool is_congruence(const Lattice& L, const std::vector<int>& block_of);

// finer <= coarser as partitions (every block of `finer` inside one of `coarser`)
bool congruence_leq(const Congruence& finer, const Congruence& coarser);

// Join in the congruence lattice: transitive closure of blockwise union.
Congruence congruence_join(const Congruence& a, const Congruence& b);

// The full congruence lattice: join-closure of the principal congruences,
// plus the zero congruence.
std::vector<Congruence> all_congruences(const Lattice& L);

// True iff L has exactly the two trivial congruences. Requires |L| >= 2.
// Equivalent to: con(a,b) is the unit for every cover a < b.
bool is_simple(const Lattice& L);

struct PrincSet {
    std::vector<Congruence> members;                // deduplicated
    std::vector<std::pair<int, int>> witness;       // first (a,b) with con(a,b) = member
    BoundedOrder order;                             // containment order, element i <-> members[i]
};

// All distinct con(a,b) for a <= b, ordered by containment.
PrincSet princ_set(const Lattice& L);

} // namespace latforge
