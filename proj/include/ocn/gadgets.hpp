#pragma once

#include "ocn/net.hpp"
#include "ocn/random_nets.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ocn
{

// Alternating automaton over a one-letter alphabet. Edges alternate between
// existential and universal states.
struct unary_afa
{
    std::vector<char> universal;
    std::vector<char> final;
    std::vector<std::pair<int, int>> edges;
    int initial = 0;

    int size() const { return static_cast<int>( universal.size() ); }
    std::vector<int> successors( int q ) const;
    void validate() const;
    std::string render() const;
};

// Universal states without successors are only produced when asked for.
unary_afa random_afa( rng_t& rng, int states, double edge_ratio = 0.4, bool allow_stuck_universal = false );

// Lengths n <= nmax of accepted words. A universal state without successors
// accepts every length >= 1.
std::set<long> afa_accept_lengths( const unary_afa& afa, long nmax );
bool afa_empty( const unary_afa& afa );

// History-deterministic iff the automaton is empty.
net afa_to_ocn( const unary_afa& afa );

// Reachability game on a succinct net over one letter: the "or" player wants
// to reach a final state with counter 0.
struct socn_game
{
    net arena;
    std::vector<char> or_owned;

    void validate() const;
};

socn_game random_socn_game( rng_t& rng, int states, int transitions, long max_delta );

enum class socn_winner { or_wins, and_wins, unknown };
const char* to_string( socn_winner w );

// Or-wins is certified by a strategy that keeps counters <= cap and reaches
// the target within depth rounds. And-wins is certified by an over-approximation
// that grants "or" every position above the cap from which a final state is
// reachable. A universal move the counter cannot pay for ends the play in
// favour of "and".
socn_winner socn_solve_bounded( const socn_game& g, long cap, int depth );

// History-deterministic iff "or" loses the game.
net socn_to_ocn( const socn_game& g );

// Both inputs deterministic OCA over the same alphabet. History-deterministic
// iff L(a) is included in L(b).
net doca_inclusion_to_oca( const net& a, const net& b );

// Deterministic one-counter automaton over letters a, b, ...
net random_doca( rng_t& rng, int states, int letters );

// Some word of length <= max_len in L(a) but not in L(b), shortest first.
std::optional<word> bounded_inclusion_counterexample( const net& a, const net& b, int max_len );

struct corpus_entry
{
    std::string path;
    std::string label;
    std::string oracle;
    std::string bounds;
};

// Writes count instances and a manifest.txt into dir; returns the entries.
std::vector<corpus_entry> write_afa_corpus( const std::string& dir, unsigned seed, int count );
std::vector<corpus_entry> write_socn_corpus( const std::string& dir, unsigned seed, int count );
// Labels come from words up to length 8 only.
std::vector<corpus_entry> write_doca_corpus( const std::string& dir, unsigned seed, int count );

} // namespace ocn
