#include "oracles.hpp"

#include "ocn/determinize.hpp"
#include "ocn/random_nets.hpp"
#include "ocn/text_format.hpp"

#include <doctest.h>

using namespace ocn;

namespace
{

net load( const std::string& name )
{
    return load_net( std::string( NETS_DIR ) + "/" + name );
}

good_set fitted( int transition, long threshold, long period )
{
    good_set s;
    s.transition = transition;
    s.samples.assign( 9, outcome::eve_wins );
    s.fit = semilinear_set{ threshold, period, {}, { 0 } };
    return s;
}

// Goodness table that is periodic with the given threshold and period.
goodness_oracle periodic_table( rng_t& rng, int transitions, period_data pd )
{
    std::bernoulli_distribution coin( 0.7 );
    std::vector<std::vector<bool>> table( transitions );
    for ( auto& row : table )
        for ( long k = 0; k <= pd.threshold + pd.period; ++k )
            row.push_back( coin( rng ) );
    return [table, pd]( int ti, long k ) -> std::optional<bool> {
        long slot = k <= pd.threshold ? k : pd.threshold + 1 + ( k - pd.threshold - 1 ) % pd.period;
        return table[ti][slot];
    };
}

// Expected net configuration of a scaled configuration, from the state names.
config decode( const net& n, const scaled_automaton& s, const config& alpha )
{
    const std::string& name = s.oca.state_names[alpha.state];
    auto comma = name.rfind( ',' );
    int q = n.find_state( name.substr( 1, comma - 1 ) );
    long idx = std::stol( name.substr( comma + 1, name.size() - comma - 2 ) );
    if ( name[0] == '<' )
        return { q, idx };
    return { q, s.threshold + idx + alpha.counter * s.period };
}

bool same_language_upto( const net& a, const net& b, int len )
{
    for ( const auto& w : all_words( a.num_letters(), len ) )
        if ( oracle::run_accepts( a, w ) != oracle::run_accepts( b, w ) )
            return false;
    return true;
}

} // namespace

TEST_CASE( "global period" )
{
    auto pd = global_period( { fitted( 0, 1, 2 ), fitted( 1, 4, 3 ) } );
    CHECK( pd.threshold == 4 );
    CHECK( pd.period == 6 );
    good_set bare;
    CHECK_THROWS_AS( global_period( { bare } ), input_error );

    auto det = determinize( load( "counting.ocn" ) );
    CHECK( det.period.threshold == 0 );
    CHECK( det.period.period == 1 );
}

TEST_CASE( "psi and theta are inverse" )
{
    net n = load( "balance.ocn" );
    auto all_good = []( int, long ) -> std::optional<bool> { return true; };
    auto s = build_candidate( n, { 3, 4 }, all_good );
    CHECK( s.oca.num_states() == n.num_states() * ( 3 + 1 + 4 ) );
    rng_t rng( 1 );
    std::uniform_int_distribution<int> st( 0, s.oca.num_states() - 1 );
    std::uniform_int_distribution<long> ctr( 0, 50 );
    for ( int i = 0; i < 100; ++i )
    {
        config alpha{ st( rng ), ctr( rng ) };
        if ( s.oca.state_names[alpha.state][0] == '<' )
            alpha.counter = 0;
        config x = s.psi( alpha );
        CHECK( x == decode( n, s, alpha ) );
        CHECK( s.theta( x ) == alpha );
    }
    for ( long k = 0; k < 40; ++k )
        CHECK( s.psi( s.theta( { 1, k } ) ) == config{ 1, k } );
}

TEST_CASE( "scaling preserves the language when everything is good" )
{
    auto all_good = []( int, long ) -> std::optional<bool> { return true; };
    for ( const char* name : { "balance.ocn", "counting.ocn", "example1.ocn" } )
        for ( period_data pd : { period_data{ 0, 1 }, period_data{ 2, 3 }, period_data{ 1, 2 } } )
        {
            net n = load( name );
            auto s = build_candidate( n, pd, all_good );
            INFO( name << " I=" << pd.threshold << " P=" << pd.period );
            CHECK( same_language_upto( n, s.oca, 6 ) );
            CHECK( audit_bijection( n, s, all_good, pd.threshold + 3 * pd.period ).empty() );
        }
}

TEST_CASE( "bijection audit with periodic goodness tables" )
{
    rng_t rng( 8 );
    for ( int round = 0; round < 60; ++round )
    {
        net n = random_net( rng, { 3, 2, 7 } );
        period_data pd{ round % 3, 1 + round % 4 };
        auto good = periodic_table( rng, static_cast<int>( n.transitions.size() ), pd );
        auto s = build_candidate( n, pd, good );
        INFO( emit_net( n ) );
        auto bad = audit_bijection( n, s, good, pd.threshold + 3 * pd.period );
        CHECK( bad.empty() );

        // Every candidate run maps to a run of the net.
        for ( const auto& w : all_words( n.num_letters(), 5 ) )
            if ( oracle::run_accepts( s.oca, w ) )
                CHECK( oracle::run_accepts( n, w ) );
    }
}

TEST_CASE( "unknown goodness refuses the build" )
{
    net n = load( "balance.ocn" );
    auto unknown = []( int, long k ) -> std::optional<bool> {
        if ( k == 2 )
            return std::nullopt;
        return true;
    };
    CHECK_THROWS_AS( build_candidate( n, { 1, 2 }, unknown ), goodness_unknown );
    net succinct = parse_net( "socn\nalphabet a\nstate s init final\ntrans s a +3 s\n" );
    CHECK_THROWS_AS( build_candidate( succinct, { 0, 1 }, unknown ), input_error );
}

TEST_CASE( "prune" )
{
    net d = parse_net( "oca\nalphabet a\nstate s init final\ntrans s zero a +1 s\ntrans s nonzero a -1 s\n" );
    CHECK( emit_net( prune( d ) ) == emit_net( d ) );

    net nd = parse_net( "oca\nalphabet a b\nstate s init\nstate t final\n"
                        "trans s zero a +1 s\ntrans s zero a 0 t\ntrans s nonzero a 0 t\ntrans s zero b 0 t\n" );
    net p = prune( nd );
    CHECK( is_deterministic( p ) );
    CHECK( p.transitions.size() == 3 );
    CHECK( p.find_transition( "s zero a +1 s" ) >= 0 );
}

TEST_CASE( "bounded equivalence" )
{
    net a = load( "balance.ocn" );
    CHECK_FALSE( bounded_equiv( a, a, 8 ) );

    net eps = parse_net( "ocn\nalphabet a\nstate s init final\n" );
    net none = parse_net( "ocn\nalphabet a\nstate s init\n" );
    auto w = bounded_equiv( eps, none, 4 );
    REQUIRE( w );
    CHECK( w->empty() );

    rng_t rng( 21 );
    int found = 0;
    for ( int round = 0; round < 80; ++round )
    {
        net x = random_net( rng, { 3, 2, 6 } );
        net y = random_net( rng, { 3, 2, 6 } );
        auto cex = bounded_equiv( x, y, 5 );
        if ( !cex )
        {
            CHECK( same_language_upto( x, y, 5 ) );
            continue;
        }
        ++found;
        CHECK( oracle::run_accepts( x, *cex ) != oracle::run_accepts( y, *cex ) );
        for ( const auto& v : all_words( 2, static_cast<int>( cex->size() ) ) )
            if ( v.size() < cex->size() || ( v.size() == cex->size() && v < *cex ) )
                CHECK( oracle::run_accepts( x, v ) == oracle::run_accepts( y, v ) );
    }
    CHECK( found > 20 );
}

TEST_CASE( "shipped history-deterministic nets determinize" )
{
    for ( const char* name : { "counting.ocn", "balance.ocn", "example1.ocn" } )
    {
        net n = load( name );
        auto det = determinize( n );
        INFO( name );
        CHECK( is_deterministic( det.doca ) );
        CHECK_FALSE( bounded_equiv( n, det.doca, 8 ) );
        CHECK( same_language_upto( n, det.candidate.oca, 6 ) );
        auto good = oracle_from_sets( det.sets );
        CHECK( audit_bijection( n, det.candidate, good, det.period.threshold + 3 * det.period.period ).empty() );
    }
}

TEST_CASE( "random history-deterministic nets determinize" )
{
    rng_t rng( 33 );
    int done = 0;
    for ( int round = 0; round < 60 && done < 15; ++round )
    {
        net n = random_net( rng, { 3, 2, 7 } );
        if ( is_history_deterministic( n ).result != outcome::eve_wins )
            continue;
        INFO( emit_net( n ) );
        try
        {
            auto det = determinize( n );
            ++done;
            CHECK( is_deterministic( det.doca ) );
            CHECK_FALSE( bounded_equiv( n, det.doca, 8 ) );
        }
        catch ( const goodness_unknown& e )
        {
            MESSAGE( e.what() );
        }
    }
    CHECK( done >= 10 );
}

TEST_CASE( "non-history-deterministic nets are refused" )
{
    CHECK_THROWS_AS( determinize( load( "fork.ocn" ) ), input_error );
}
