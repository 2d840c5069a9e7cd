#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ocn
{

enum class player { eve, adam };

enum class outcome { eve_wins, adam_wins, inconclusive };

const char* to_string( outcome o );

// Explicit finite reachability game. A vertex with no successors is lost by
// its owner; Adam wins on reaching a target.
struct finite_game
{
    std::vector<player> owner;
    std::vector<char> target;
    std::vector<std::vector<int>> succ;

    int size() const { return static_cast<int>( owner.size() ); }
    int add_vertex( player p, bool is_target );
};

struct reachability_solution
{
    std::vector<char> attractor;
    std::vector<int> rank;
    // Chosen successor for the player winning at that vertex, -1 if irrelevant.
    std::vector<int> strategy;
};

reachability_solution solve_finite_reachability( const finite_game& g );

// A move of owner Eve changes only counter2, a move of owner Adam only
// counter1. Counter1 benefits Adam, counter2 benefits Eve.
struct arena_move
{
    int src = 0;
    int dst = 0;
    long d1 = 0;
    long d2 = 0;
    long g1 = 0;
    long g2 = 0;
    std::string label;
};

struct position
{
    int control = 0;
    long k1 = 0;
    long k2 = 0;
};

struct monotone_arena
{
    std::vector<player> owner;
    std::vector<char> adam_target;
    std::vector<std::string> names;
    std::vector<arena_move> moves;

    int num_controls() const { return static_cast<int>( owner.size() ); }
    int add_control( player p, bool target, std::string name = {} );
    // Lower bounds are raised so that neither counter goes negative.
    void add_move( int src, int dst, long d1, long d2, std::string label = {}, long g1 = 0, long g2 = 0 );

    std::vector<std::vector<int>> out_moves() const;
    void check() const;
};

enum class truncation { pessimistic, optimistic };

enum class zone { low, high, top };

// In the low zone a and b are the two counters; in the high zone a is the
// difference bound. In the top zone the runaway counter is saturated and a
// holds the other one.
struct abstract_node
{
    int control = -1;
    zone z = zone::low;
    long a = 0;
    long b = 0;
};

// Finite abstraction of an arena. Below the cap counters are exact; above it
// only the difference between the counters is kept, within [-cap, cap]; past
// that the leading counter saturates.
struct truncated_game
{
    truncation mode;
    long cap;
    finite_game game;
    std::vector<std::vector<int>> edge_move;
    std::vector<abstract_node> nodes;
    int initial = -1;

    std::string describe( int v, const monotone_arena& a ) const;
};

truncated_game truncate( const monotone_arena& a, const position& init, long cap, truncation mode );
truncated_game pessimistic_truncation( const monotone_arena& a, const position& init, long cap );
truncated_game optimistic_truncation( const monotone_arena& a, const position& init, long cap );

struct capped_verdict
{
    outcome result = outcome::inconclusive;
    long cap_used = 0;
    // Winner's positional choices on the deciding truncation: vertex name, move label.
    std::vector<std::pair<std::string, std::string>> strategy;
};

std::vector<long> default_caps( long base );

capped_verdict certified_solve( const monotone_arena& a, const position& init, const std::vector<long>& caps,
                                bool want_strategy = false );

enum class bounded_result { eve_wins, adam_wins, unknown };

const char* to_string( bounded_result r );

bounded_result brute_force_bounded( const monotone_arena& a, const position& init, long cap, int depth );

} // namespace ocn
