#pragma once

#include "ocn/game.hpp"
#include "ocn/net.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ocn
{

// Fresh letter accepted by the augmented net as a one-letter word.
inline const std::string cat_letter = "__cat";
inline const std::string heart_letter = "__heart";

// The fresh final state is reached from the initial state on the cat letter.
// An initial state with incoming transitions is first split off, so that
// only the one-letter word is added.
net augment_with_cat( const net& b );

// Fresh initial state with heart moves into copies of a and of b augmented
// with the cat word. History-deterministic iff L(a) is included in L(b),
// provided both inputs are.
net inclusion_gadget( const net& a, const net& b );

class not_hd_error : public input_error
{
public:
    not_hd_error( const std::string& which, std::string witness );

    std::string which;
    // Rendered refuter witness, empty when none was found.
    std::string witness;
};

// Both inputs are checked for history-determinism first; a refuted input
// raises not_hd_error.
capped_verdict hd_inclusion( const net& a, const net& b, const std::vector<long>& caps = {} );
capped_verdict hd_equivalence( const net& a, const net& b, const std::vector<long>& caps = {} );

net universal_automaton( const std::vector<std::string>& letters );

// Simulation of the one-state universal automaton by n. EveWins implies
// universality; for history-deterministic nets the converse holds too.
capped_verdict universality( const net& n, const std::vector<long>& caps = {} );

} // namespace ocn
