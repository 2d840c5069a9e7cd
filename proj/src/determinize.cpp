#include "ocn/determinize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ocn
{

period_data global_period( const std::vector<good_set>& sets )
{
    period_data pd;
    for ( const auto& s : sets )
    {
        if ( !s.fit )
            throw input_error( "good set of transition " + std::to_string( s.transition ) + " has no periodic fit" );
        pd.threshold = std::max( pd.threshold, s.fit->threshold );
        pd.period = std::lcm( pd.period, s.fit->period );
    }
    return pd;
}

goodness_oracle oracle_from_sets( const std::vector<good_set>& sets )
{
    return [sets]( int ti, long k ) -> std::optional<bool> {
        if ( ti < 0 || ti >= static_cast<int>( sets.size() ) )
            return std::nullopt;
        return sets[ti].good_at( k );
    };
}

goodness_unknown::goodness_unknown( int t, long k )
    : std::runtime_error( "goodness of transition " + std::to_string( t ) + " at counter " + std::to_string( k ) +
                          " is unknown" ),
      transition( t ), counter( k )
{
}

int scaled_automaton::find( const scaled_state& s ) const
{
    long block = threshold + 1 + period;
    return static_cast<int>( s.state * block + ( s.periodic ? threshold + s.index : s.index ) );
}

config scaled_automaton::psi( const config& alpha ) const
{
    const auto& s = states.at( alpha.state );
    if ( !s.periodic )
    {
        if ( alpha.counter != 0 )
            throw std::invalid_argument( "not a valid configuration" );
        return { s.state, s.index };
    }
    return { s.state, threshold + s.index + alpha.counter * period };
}

config scaled_automaton::theta( const config& c ) const
{
    if ( c.counter <= threshold )
        return { find( { c.state, false, c.counter } ), 0 };
    long j = ( c.counter - threshold - 1 ) % period + 1;
    return { find( { c.state, true, j } ), ( c.counter - threshold - j ) / period };
}

scaled_automaton build_candidate( const net& n, period_data pd, const goodness_oracle& good )
{
    require_valid( n );
    if ( n.kind != net_kind::ocn || !is_unary( n ) )
        throw input_error( "determinization needs a net with unary deltas" );
    if ( pd.threshold < 0 || pd.period < 1 )
        throw std::invalid_argument( "bad threshold or period" );

    scaled_automaton out;
    out.threshold = pd.threshold;
    out.period = pd.period;
    net& b = out.oca;
    b.kind = net_kind::oca;
    b.letter_names = n.letter_names;
    for ( int q = 0; q < n.num_states(); ++q )
    {
        const std::string& name = n.state_names[q];
        for ( long m = 0; m <= pd.threshold; ++m )
        {
            out.states.push_back( { q, false, m } );
            b.add_state( "<" + name + "," + std::to_string( m ) + ">", n.is_final( q ) );
        }
        for ( long j = 1; j <= pd.period; ++j )
        {
            out.states.push_back( { q, true, j } );
            b.add_state( "[" + name + "," + std::to_string( j ) + "]", n.is_final( q ) );
        }
    }
    b.initial = out.find( { n.initial, false, 0 } );

    adjacency adj( n );
    for ( int si = 0; si < b.num_states(); ++si )
    {
        const auto& s = out.states[si];
        for ( guard g : { guard::zero, guard::nonzero } )
        {
            if ( !s.periodic && g == guard::nonzero )
                continue;
            // One representative counter per guard; periodicity covers the rest.
            long c = g == guard::nonzero ? 1 : 0;
            config from = out.psi( { si, c } );
            for ( int a = 0; a < n.num_letters(); ++a )
                for ( int ti : adj.out( s.state, a ) )
                {
                    const auto& t = n.transitions[ti];
                    if ( !enabled( t, from.counter ) )
                        continue;
                    auto ok = good( ti, from.counter );
                    if ( !ok )
                        throw goodness_unknown( ti, from.counter );
                    if ( !*ok )
                        continue;
                    config to = out.theta( { t.dst, from.counter + t.delta } );
                    b.add_transition( si, a, to.counter - c, to.state, g );
                }
        }
    }
    return out;
}

net prune( const net& candidate )
{
    std::map<std::tuple<int, int, int>, int> keep;
    for ( int ti = 0; ti < static_cast<int>( candidate.transitions.size() ); ++ti )
    {
        const auto& t = candidate.transitions[ti];
        auto [it, fresh] = keep.try_emplace( { t.src, static_cast<int>( t.grd ), t.letter }, ti );
        if ( !fresh && candidate.render( t ) < candidate.render( candidate.transitions[it->second] ) )
            it->second = ti;
    }
    std::set<int> kept;
    for ( const auto& [key, ti] : keep )
        kept.insert( ti );
    net out = candidate;
    out.transitions.clear();
    for ( int ti : kept )
        out.transitions.push_back( candidate.transitions[ti] );
    return out;
}

std::optional<word> bounded_equiv( const net& a, const net& b, int max_len )
{
    if ( a.letter_names != b.letter_names )
        throw input_error( "comparison needs both nets over the same alphabet" );
    adjacency adj_a( a ), adj_b( b );
    auto accepting = []( const net& n, const config_set& s ) {
        return std::any_of( s.begin(), s.end(), [&]( const config& c ) { return n.is_final( c.state ); } );
    };
    struct entry
    {
        word w;
        config_set sa, sb;
    };
    std::vector<entry> level{ { {}, { { a.initial, 0 } }, { { b.initial, 0 } } } };
    for ( int len = 0; len <= max_len && !level.empty(); ++len )
    {
        for ( const auto& e : level )
            if ( accepting( a, e.sa ) != accepting( b, e.sb ) )
                return e.w;
        if ( len == max_len )
            break;
        std::vector<entry> next;
        for ( const auto& e : level )
            for ( int x = 0; x < a.num_letters(); ++x )
            {
                entry f{ e.w, post( a, adj_a, e.sa, x ), post( b, adj_b, e.sb, x ) };
                if ( f.sa.empty() && f.sb.empty() )
                    continue;
                f.w.push_back( x );
                next.push_back( std::move( f ) );
            }
        level = std::move( next );
    }
    return std::nullopt;
}

std::vector<std::string> audit_bijection( const net& n, const scaled_automaton& s, const goodness_oracle& good,
                                          long max_counter )
{
    std::vector<std::string> bad;
    const net& b = s.oca;
    auto show = [&]( const config& alpha ) { return b.render( alpha ); };
    for ( int si = 0; si < b.num_states(); ++si )
        for ( long c = 0; c <= max_counter; ++c )
        {
            if ( !s.states[si].periodic && c > 0 )
                break;
            config alpha{ si, c };
            config x = s.psi( alpha );
            if ( s.theta( x ) != alpha )
                bad.push_back( "theta(psi(" + show( alpha ) + ")) differs" );

            std::set<std::pair<int, config>> mine, theirs;
            for ( const auto& t : b.transitions )
                if ( t.src == si && enabled( t, c ) )
                {
                    config beta{ t.dst, c + t.delta };
                    if ( !s.states[beta.state].periodic && beta.counter != 0 )
                    {
                        bad.push_back( "move to invalid " + show( beta ) + " from " + show( alpha ) );
                        continue;
                    }
                    mine.insert( { t.letter, s.psi( beta ) } );
                }
            for ( int ti = 0; ti < static_cast<int>( n.transitions.size() ); ++ti )
            {
                const auto& t = n.transitions[ti];
                if ( t.src != x.state || !enabled( t, x.counter ) )
                    continue;
                auto ok = good( ti, x.counter );
                if ( !ok )
                    bad.push_back( "unknown goodness of " + n.render( t ) + " at " + std::to_string( x.counter ) );
                else if ( *ok )
                    theirs.insert( { t.letter, { t.dst, x.counter + t.delta } } );
            }
            if ( mine != theirs )
                bad.push_back( "moves differ at " + show( alpha ) + " = " + n.render( x ) );
        }
    return bad;
}

determinization determinize( const net& n, long bound, const std::vector<long>& caps )
{
    require_valid( n );
    if ( n.kind != net_kind::ocn || !is_unary( n ) )
        throw input_error( "determinization needs a net with unary deltas" );
    if ( is_history_deterministic( n, caps ).result == outcome::adam_wins )
        throw input_error( "net is not history-deterministic" );
    determinization out;
    for ( int ti = 0; ti < static_cast<int>( n.transitions.size() ); ++ti )
    {
        out.sets.push_back( compute_good_set( n, ti, bound, caps ) );
        const auto& samples = out.sets.back().samples;
        auto unknown = std::find( samples.begin(), samples.end(), outcome::inconclusive );
        if ( unknown != samples.end() )
            throw goodness_unknown( ti, unknown - samples.begin() );
    }
    out.period = global_period( out.sets );
    out.candidate = build_candidate( n, out.period, oracle_from_sets( out.sets ) );
    out.doca = prune( out.candidate.oca );
    return out;
}

determinization determinize( const net& n )
{
    return determinize( n, std::max( 16L, 3L * n.num_states() + 8 ), hd_caps( n ) );
}

} // namespace ocn
