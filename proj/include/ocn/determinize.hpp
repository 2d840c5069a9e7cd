#pragma once

#include "ocn/hd.hpp"
#include "ocn/net.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ocn
{

struct period_data
{
    long threshold = 0;
    long period = 1;
};

// Fails unless every set has a fit.
period_data global_period( const std::vector<good_set>& sets );

// Goodness of transition ti of the source net at counter k; nullopt when unknown.
using goodness_oracle = std::function<std::optional<bool>( int ti, long k )>;

goodness_oracle oracle_from_sets( const std::vector<good_set>& sets );

// <q,m> for 0 <= m <= I holds the exact counter m with a zero scaled counter;
// [q,n] for 1 <= n <= P stands for I + n + c*P at scaled counter c.
struct scaled_state
{
    int state = 0;
    bool periodic = false;
    long index = 0;
};

struct scaled_automaton
{
    net oca;
    long threshold = 0;
    long period = 1;
    std::vector<scaled_state> states;

    int find( const scaled_state& s ) const;
    // Valid configurations only: initial-block states carry counter 0.
    config psi( const config& alpha ) const;
    config theta( const config& c ) const;
};

class goodness_unknown : public std::runtime_error
{
public:
    goodness_unknown( int transition, long counter );

    int transition;
    long counter;
};

// Nondeterministic candidate over scaled states; its transitions correspond
// to the good transitions of n. n must be a unary net.
scaled_automaton build_candidate( const net& n, period_data pd, const goodness_oracle& good );

// Keeps the canonically least transition per (state, guard, letter).
net prune( const net& candidate );

// Length-lexicographically least word of length <= max_len on which a and b
// disagree.
std::optional<word> bounded_equiv( const net& a, const net& b, int max_len );

// Mismatches between candidate moves and good moves of n on every valid
// configuration with scaled counter <= max_counter, rendered as text.
std::vector<std::string> audit_bijection( const net& n, const scaled_automaton& s, const goodness_oracle& good,
                                          long max_counter );

struct determinization
{
    std::vector<good_set> sets;
    period_data period;
    scaled_automaton candidate;
    net doca;
};

// Full pipeline; throws goodness_unknown when a needed verdict is inconclusive.
determinization determinize( const net& n, long bound, const std::vector<long>& caps );
determinization determinize( const net& n );

} // namespace ocn
