#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtor/graph.hpp"
#include "mtor/smith.hpp"

namespace mtor {

// Letters are nonzero integers: +(i+1) is generator i, -(i+1) its inverse.
using Word = std::vector<int>;

Word free_reduce(Word w);
Word cyclic_reduce(Word w);
Word inverse_word(const Word& w);

// A finite presentation.  Relators are kept freely and cyclically reduced.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    void normalize(); // reduce relators, drop trivial ones
    int total_relator_length() const;
    std::string to_string() const;                  // < a, b | ~a b a, ... >
    std::string word_to_string(const Word& w) const;
    Word parse_word(const std::string& text) const; // "~a b" tokens
};

// HNN presentation of the fundamental group of the mapping torus of f:
// generators of pi_1(G) from a breadth-first spanning tree, a stable
// letter t, and one relator ~t x t (f(x) rewritten through the tree)^-1
// per generator x.
Presentation pi1_presentation(const MarkedMap& mm);

// Deterministic greedy simplification:
//   1. free/cyclic reduction,
//   2. elimination of generators isolated by a relator (single occurrence),
//   3. generator substitutions x -> x y, x -> x ~y (and left variants)
//      shorten the presentation or shrink its longest letter run.
Presentation tietze_simplify(const Presentation& p);

AbelianGroup abelianization(const Presentation& p);

// A renaming assigns to each generator name of the second word a generator
// of the first word or its inverse ("x" -> {"a", true} means x |-> ~a).
struct SignedRenaming {
    std::vector<std::pair<std::string, std::pair<std::string, bool>>> entries;
};

// True iff after renaming w2's letters, the cyclic reductions of w1 and w2
// agree up to rotation and inversion.  Without a renaming, all signed
// bijections between the (small) alphabets are tried.
bool words_cyclically_equal(const Presentation& p1, const Word& w1, const Presentation& p2,
                            const Word& w2,
                            const std::optional<SignedRenaming>& renaming = std::nullopt);

// Z + coker(f_* - I), the first homology of the mapping torus computed
// directly from the abelianized action of f on H_1(G).
AbelianGroup mapping_torus_h1_oracle(const MarkedMap& mm);

} // namespace mtor
