#pragma once

#include "ocn/game.hpp"
#include "ocn/net.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ocn
{

struct sim_query
{
    const net* spoiler = nullptr;
    config spoiler_start;
    const net* duplicator = nullptr;
    config duplicator_start;
};

enum class sim_semantics
{
    // Finality-based condition: Duplicator must be final whenever Spoiler is.
    final_state,
    // Stuck-based condition: whoever cannot move loses.
    original,
};

struct sim_arena
{
    monotone_arena arena;
    position start;
};

sim_arena build_sim_arena( const sim_query& q, sim_semantics s = sim_semantics::final_state );

std::vector<long> sim_caps( const net& a, const net& b );

capped_verdict simulates( const sim_query& q, const std::vector<long>& caps,
                          sim_semantics s = sim_semantics::final_state );
capped_verdict simulates( const sim_query& q, sim_semantics s = sim_semantics::final_state );

std::pair<net, net> to_original_sim( const net& a, const net& b );
std::pair<net, net> from_original_sim( const net& a, const net& b );

struct semilinear_set
{
    long threshold = 0;
    long period = 1;
    std::set<long> base;
    std::set<long> residues;

    bool contains( long k ) const;
    std::string render() const;
};

std::optional<semilinear_set> detect_semilinear( const std::vector<bool>& samples );

struct frontier_table
{
    int spoiler_state = 0;
    int duplicator_state = 0;
    // Minimal Duplicator counter per Spoiler counter; unknown_entry or infinite_credit.
    std::vector<long> table;

    static constexpr long unknown_entry = -1;
    std::string render() const;
};

frontier_table frontier( const net& a, const net& b, int spoiler_state, int duplicator_state, long kmax,
                         const std::vector<long>& caps, long kprime_max = -1 );

} // namespace ocn
