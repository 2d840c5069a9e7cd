#include "ocn/sim.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ocn
{

sim_arena build_sim_arena( const sim_query& q, sim_semantics s )
{
    const net& a = *q.spoiler;
    const net& b = *q.duplicator;
    if ( a.letter_names != b.letter_names )
        throw input_error( "simulation needs both nets over the same alphabet" );
    if ( a.kind == net_kind::oca || b.kind == net_kind::oca )
        throw input_error( "simulation games are defined for nets without zero tests" );

    bool finality = s == sim_semantics::final_state;
    std::vector<long> need = finality ? min_credit( a ) : std::vector<long>( a.num_states(), 0 );

    sim_arena out;
    monotone_arena& ar = out.arena;
    int na = a.num_states(), nb = b.num_states();

    auto round_control = [&]( int p, int pp ) { return p * nb + pp; };
    for ( int p = 0; p < na; ++p )
        for ( int pp = 0; pp < nb; ++pp )
        {
            bool target = finality && a.is_final( p ) && !b.is_final( pp );
            ar.add_control( player::adam, target, a.state_names[p] + "|" + b.state_names[pp] );
        }

    std::map<std::tuple<int, int, int>, int> answer;
    auto answer_control = [&]( int p, int pp, int letter ) {
        auto [it, fresh] = answer.try_emplace( { p, pp, letter }, ar.num_controls() );
        if ( fresh )
            ar.add_control( player::eve, false,
                            a.state_names[p] + "|" + b.state_names[pp] + "|" + a.letter_names[letter] );
        return it->second;
    };

    adjacency adj_b( b );
    for ( int p = 0; p < na; ++p )
        for ( int pp = 0; pp < nb; ++pp )
            for ( const auto& t : a.transitions )
            {
                if ( t.src != p || need[t.dst] == infinite_credit )
                    continue;
                // Spoiler never benefits from leaving the configurations that can still accept.
                long guard1 = std::max( -t.delta, need[t.dst] - t.delta );
                int e = answer_control( t.dst, pp, t.letter );
                ar.add_move( round_control( p, pp ), e, t.delta, 0, a.render( t ), guard1 );
            }

    // The start position is checked too: an accepting Spoiler start needs an
    // accepting Duplicator start.
    int start = round_control( q.spoiler_start.state, q.duplicator_start.state );

    for ( const auto& [key, e] : std::map<std::tuple<int, int, int>, int>( answer ) )
    {
        auto [p, pp, letter] = key;
        for ( int ti : adj_b.out( pp, letter ) )
        {
            const auto& t = b.transitions[ti];
            ar.add_move( e, round_control( p, t.dst ), 0, t.delta, b.render( t ) );
        }
    }

    out.start = { start, q.spoiler_start.counter, q.duplicator_start.counter };
    return out;
}

std::vector<long> sim_caps( const net& a, const net& b )
{
    return default_caps( std::max( a.num_states(), b.num_states() ) );
}

capped_verdict simulates( const sim_query& q, const std::vector<long>& caps, sim_semantics s )
{
    auto sa = build_sim_arena( q, s );
    return certified_solve( sa.arena, sa.start, caps );
}

capped_verdict simulates( const sim_query& q, sim_semantics s )
{
    return simulates( q, sim_caps( *q.spoiler, *q.duplicator ), s );
}

namespace
{

const std::string dollar = "__dollar";

net with_dollar_loops( const net& n )
{
    if ( n.find_letter( dollar ) >= 0 )
        throw input_error( "net already uses the reserved letter " + dollar );
    net out = complete( n );
    int d = out.add_letter( dollar );
    for ( int q = 0; q < out.num_states(); ++q )
        if ( out.is_final( q ) )
            out.add_transition( q, d, 0, q );
    return out;
}

net all_final_completed( const net& n )
{
    net out = n;
    std::fill( out.final.begin(), out.final.end(), 1 );
    std::string sink = "__reject";
    for ( int i = 1; out.find_state( sink ) >= 0; ++i )
        sink = "__reject" + std::to_string( i );
    int s = out.add_state( sink, false );
    int nl = out.num_letters();
    std::vector<char> safe( static_cast<std::size_t>( n.num_states() ) * nl, 0 );
    for ( const auto& t : n.transitions )
        if ( t.delta >= 0 )
            safe[static_cast<std::size_t>( t.src ) * nl + t.letter] = 1;
    // Every blocked step of the original can divert to the sink.
    for ( int q = 0; q < n.num_states(); ++q )
        for ( int a = 0; a < nl; ++a )
            if ( !safe[static_cast<std::size_t>( q ) * nl + a] )
                out.add_transition( q, a, 0, s );
    for ( int a = 0; a < nl; ++a )
        out.add_transition( s, a, 0, s );
    return out;
}

} // namespace

std::pair<net, net> to_original_sim( const net& a, const net& b )
{
    return { with_dollar_loops( a ), with_dollar_loops( b ) };
}

std::pair<net, net> from_original_sim( const net& a, const net& b )
{
    return { all_final_completed( a ), all_final_completed( b ) };
}

bool semilinear_set::contains( long k ) const
{
    if ( k < threshold )
        return base.count( k ) > 0;
    return residues.count( ( k - threshold ) % period ) > 0;
}

namespace
{

std::string render_set( const std::set<long>& s )
{
    std::string out = "{";
    bool first = true;
    for ( long x : s )
    {
        out += ( first ? "" : "," ) + std::to_string( x );
        first = false;
    }
    return out + "}";
}

} // namespace

std::string semilinear_set::render() const
{
    return "I=" + std::to_string( threshold ) + " P=" + std::to_string( period ) + " base=" + render_set( base ) +
           " residues=" + render_set( residues );
}

std::optional<semilinear_set> detect_semilinear( const std::vector<bool>& samples )
{
    long b = static_cast<long>( samples.size() ) - 1;
    if ( b < 8 )
        throw std::invalid_argument( "at least 9 samples are needed" );
    for ( long i = 0; i <= b; ++i )
        for ( long p = 1; p <= ( b - i ) / 3; ++p )
        {
            bool periodic = true;
            for ( long k = i + p; k <= b && periodic; ++k )
                periodic = samples[k] == samples[k - p];
            if ( !periodic )
                continue;
            semilinear_set s;
            s.threshold = i;
            s.period = p;
            for ( long k = 0; k < i; ++k )
                if ( samples[k] )
                    s.base.insert( k );
            for ( long r = 0; r < p; ++r )
                if ( samples[i + r] )
                    s.residues.insert( r );
            return s;
        }
    return std::nullopt;
}

std::string frontier_table::render() const
{
    std::ostringstream out;
    for ( std::size_t k = 0; k < table.size(); ++k )
    {
        out << ( k ? " " : "" ) << k << ":";
        if ( table[k] == unknown_entry )
            out << "?";
        else if ( table[k] == infinite_credit )
            out << "inf";
        else
            out << table[k];
    }
    return out.str();
}

frontier_table frontier( const net& a, const net& b, int spoiler_state, int duplicator_state, long kmax,
                         const std::vector<long>& caps, long kprime_max )
{
    if ( kmax < 0 )
        throw std::invalid_argument( "kmax must be non-negative" );
    if ( kprime_max < 0 )
        kprime_max = kmax + static_cast<long>( b.num_states() ) * caps.back();

    frontier_table ft{ spoiler_state, duplicator_state, {} };
    auto verdict = [&]( long k, long kp ) {
        sim_query q{ &a, { spoiler_state, k }, &b, { duplicator_state, kp } };
        return simulates( q, caps ).result;
    };

    for ( long k = 0; k <= kmax; ++k )
    {
        long lo = 0, hi = kprime_max;
        if ( verdict( k, hi ) != outcome::eve_wins )
        {
            bool refuted = verdict( k, hi ) == outcome::adam_wins;
            // Refuted at the largest surplus tried; no finite bound is certified.
            ft.table.push_back( refuted ? infinite_credit : frontier_table::unknown_entry );
            continue;
        }
        while ( lo < hi )
        {
            long mid = lo + ( hi - lo ) / 2;
            if ( verdict( k, mid ) == outcome::eve_wins )
                hi = mid;
            else
                lo = mid + 1;
        }
        bool minimal = lo == 0 || verdict( k, lo - 1 ) == outcome::adam_wins;
        ft.table.push_back( minimal ? lo : frontier_table::unknown_entry );
    }

    long last = 0;
    for ( long v : ft.table )
    {
        if ( v == frontier_table::unknown_entry )
            continue;
        if ( v < last )
            throw std::logic_error( "frontier is not monotone" );
        last = v;
    }
    return ft;
}

} // namespace ocn
