#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "earring/path.hpp"
#include "earring/space.hpp"
#include "earring/word.hpp"

namespace earring::testing {

// Oracles written independently of the library's algorithms.

// Deletes the leftmost adjacent cancelling pair until none is left.
Word naive_reduce(const Word& w);
// free_reduce of every projection onto F ⊆ supp(v) ∪ supp(w) agrees.
bool equivalent_all_subsets(const Word& v, const Word& w);
// No nonempty contiguous subword reduces to the empty word.
bool reduced_by_definition(const Word& w);

// Every word of exactly `len` letters over generators 1..gens.
std::vector<Word> all_words(std::size_t len, GenIndex gens);

Word random_word(std::mt19937_64& rng, std::size_t max_len, GenIndex gens);
// T -> ε | x T x^- T, stopped at max_len letters.
Word random_trivial_word(std::mt19937_64& rng, std::size_t max_len, GenIndex gens);
// Nonempty and freely reduced.
Word random_reduced_word(std::mt19937_64& rng, std::size_t max_len, GenIndex gens);

// A loop at d_1 on the given plane model reading the word `w`: straight arcs
// from the current point to d_n, the winding, and a final arc home. Segment
// durations get random integer weights in 1..max_weight.
ProperPath loop_for_word(const Word& w, const SpaceModel& model, std::mt19937_64& rng,
                         int max_weight = 6);

EPoint random_point(std::mt19937_64& rng, const SpaceModel& model, GenIndex max_circle);

}  // namespace earring::testing

#include "earring/homotopy.hpp"

namespace earring::testing {

// Number of mutation kinds understood by mutate_tree.
constexpr int kTreeMutations = 8;

// Applies mutation `kind` (0 <= kind < kTreeMutations) to a tree. Returns
// false when the tree has no node the mutation applies to.
bool mutate_tree(DecompositionTree& tree, int kind, std::mt19937_64& rng);

}  // namespace earring::testing
