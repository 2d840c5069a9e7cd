#pragma once

#include "ocn/game.hpp"
#include "ocn/net.hpp"
#include "ocn/sim.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ocn
{

// Token game: Adam names a letter, Eve moves her token, Adam moves his.
// counter1 is Adam's token, counter2 is Eve's.
struct g1_game
{
    monotone_arena arena;
    position start;
    int num_states = 0;

    // Control at the beginning of a round.
    int round_control( int eve_state, int adam_state ) const { return eve_state * num_states + adam_state; }
    position at( config eve, config adam ) const;
};

g1_game g1_arena( const net& n );

// A simulation instance equivalent to the token game.
struct sim_instance
{
    net spoiler;
    config spoiler_start;
    net duplicator;
    config duplicator_start;

    sim_query query() const { return { &spoiler, spoiler_start, &duplicator, duplicator_start }; }
};

sim_instance g1_to_sim( const net& n );

std::vector<long> hd_caps( const net& n );
capped_verdict is_history_deterministic( const net& n, const std::vector<long>& caps, bool want_strategy = false );
capped_verdict is_history_deterministic( const net& n );

// Adam's strategy tree in the letter game. A reply with transition -1 means
// Eve had no move; a reply without a child is a position Adam has won.
struct witness_reply
{
    int transition = -1;
    int child = -1;
};

struct witness_node
{
    int letter = 0;
    std::vector<witness_reply> replies;
};

struct adam_witness
{
    std::vector<witness_node> nodes;
    int root = -1;

    int depth() const;
};

std::optional<adam_witness> letter_game_refuter( const net& n, long cap, int depth );
std::string render_witness( const net& n, const adam_witness& w );
bool replay_witness( const net& n, const adam_witness& w );

// Restricted token game for transition gamma from (p, k): on gamma's letter
// Eve's first move must be gamma.
struct gadget
{
    net spoiler;
    net duplicator;
    int spoiler_start = 0;
    int duplicator_start = 0;

    sim_query at( long k ) const { return { &spoiler, { spoiler_start, k }, &duplicator, { duplicator_start, k } }; }
};

// n must be complete; gamma indexes n.transitions.
gadget good_transition_gadget( const net& n, int gamma );

struct good_set
{
    int transition = -1;
    // Verdict per counter 0..bound: EveWins means good.
    std::vector<outcome> samples;
    std::optional<semilinear_set> fit;

    long bound() const { return static_cast<long>( samples.size() ) - 1; }
    bool conclusive() const;
    std::optional<bool> good_at( long k ) const;
    std::string render() const;
};

// Good sets refer to the transitions of complete(n), whose prefix is n's own.
good_set compute_good_set( const net& n, int transition, long bound, const std::vector<long>& caps );
std::vector<good_set> compute_good_sets( const net& n, long bound, const std::vector<long>& caps );

struct resolver_choice
{
    int transition = -1;
    // (transition, counter) pairs whose goodness is unknown.
    std::vector<std::pair<int, long>> blocked;
};

resolver_choice resolver_move( const net& n, const std::vector<good_set>& sets, const config& c, int letter );

} // namespace ocn
