// Acceptance suite: one PASS/FAIL line per criterion.

#include "oracles.hpp"

#include "ocn/determinize.hpp"
#include "ocn/gadgets.hpp"
#include "ocn/hd.hpp"
#include "ocn/lang_ops.hpp"
#include "ocn/random_nets.hpp"
#include "ocn/sim.hpp"
#include "ocn/text_format.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ocn;

namespace
{

using clock_type = std::chrono::steady_clock;

double seconds_since( clock_type::time_point t0 )
{
    return std::chrono::duration<double>( clock_type::now() - t0 ).count();
}

net load( const std::string& name )
{
    return load_net( std::string( NETS_DIR ) + "/" + name );
}

// Engine soundness bookkeeping shared by every criterion.
struct soundness
{
    int compared = 0;
    std::vector<std::string> contradictions;

    void check( const monotone_arena& a, const position& init, const capped_verdict& v, const std::string& what )
    {
        if ( v.result == outcome::inconclusive )
            return;
        auto b = brute_force_bounded( a, init, 10, 40 );
        if ( b == bounded_result::unknown )
            return;
        ++compared;
        bool eve = b == bounded_result::eve_wins;
        if ( eve != ( v.result == outcome::eve_wins ) )
            contradictions.push_back( what );
    }
};

soundness engine;
int failures = 0;

void report( int id, const std::string& name, bool ok, const std::string& detail )
{
    std::printf( "%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str() );
    std::fflush( stdout );
    failures += !ok;
}

template <class... Args>
std::string fmt( const char* f, Args... args )
{
    char buf[512];
    std::snprintf( buf, sizeof buf, f, args... );
    return buf;
}

bool words_included( const net& a, const net& b, int len )
{
    for ( const auto& w : all_words( a.num_letters(), len ) )
        if ( oracle::run_accepts( a, w ) && !oracle::run_accepts( b, w ) )
            return false;
    return true;
}

std::vector<net> random_hd_nets( rng_t& rng, int count, random_net_options o )
{
    std::vector<net> out;
    while ( static_cast<int>( out.size() ) < count )
    {
        net n = random_net( rng, o );
        if ( is_history_deterministic( n ).result == outcome::eve_wins )
            out.push_back( n );
    }
    return out;
}

void determinism_implies_hd()
{
    auto t0 = clock_type::now();
    rng_t rng( 101 );
    int ok = 0, total = 50;
    for ( int i = 0; i < total; ++i )
    {
        random_net_options o{ 1 + i % 5, 1 + i % 3, 0 };
        o.deterministic = o.complete = true;
        net n = random_net( rng, o );
        auto v = is_history_deterministic( n );
        sim_instance inst = g1_to_sim( n );
        sim_arena sa = build_sim_arena( inst.query() );
        engine.check( sa.arena, sa.start, v, "deterministic\n" + emit_net( n ) );
        ok += v.result == outcome::eve_wins && v.cap_used <= 4L * n.num_states();
    }
    double s = seconds_since( t0 );
    report( 1, "determinism implies HD", ok == total && s < 60,
            fmt( "%d/%d HD within cap 4|Q|, %.1fs (limit 60s)", ok, total, s ) );
}

std::vector<net> small_corpus()
{
    rng_t rng( 202 );
    std::vector<net> nets;
    for ( int i = 0; i < 100; ++i )
        nets.push_back( random_net( rng, { 1 + i % 3, 1 + i % 2, 2 + i % 5 } ) );
    return nets;
}

void reduction_coherence( const std::vector<net>& nets )
{
    auto t0 = clock_type::now();
    int conclusive = 0, disagree = 0;
    for ( const auto& n : nets )
    {
        auto caps = hd_caps( n );
        g1_game g = g1_arena( n );
        auto direct = certified_solve( g.arena, g.start, caps );
        engine.check( g.arena, g.start, direct, "g1 of\n" + emit_net( n ) );
        sim_instance inst = g1_to_sim( n );
        auto q = inst.query();
        auto via = simulates( q, caps );
        sim_arena sa = build_sim_arena( q );
        engine.check( sa.arena, sa.start, via, "g1 simulation of\n" + emit_net( n ) );
        if ( direct.result == outcome::inconclusive || via.result == outcome::inconclusive )
            continue;
        ++conclusive;
        disagree += direct.result != via.result;
    }
    double s = seconds_since( t0 );
    report( 2, "token game and simulation agree", disagree == 0 && s < 300,
            fmt( "%d conclusive of %zu, %d disagreements, %.1fs (limit 300s)", conclusive, nets.size(), disagree, s ) );
}

void refuter_consistency( const std::vector<net>& nets )
{
    int both = 0, witnesses = 0, bad_replay = 0;
    for ( const auto& n : nets )
    {
        auto hd = is_history_deterministic( n ).result;
        auto w = letter_game_refuter( n, 8, 12 );
        if ( !w )
            continue;
        ++witnesses;
        both += hd == outcome::eve_wins;
        bad_replay += !replay_witness( n, *w );
    }
    report( 3, "refuter consistent with HD verdicts", both == 0 && bad_replay == 0,
            fmt( "%d witnesses, %d on HD-certified nets, %d failed replays", witnesses, both, bad_replay ) );
}

void known_witnesses()
{
    bool ok = true;
    std::string detail;
    for ( const char* name : { "seven.ocn", "split.ocn" } )
    {
        net n = load( name );
        auto v = is_history_deterministic( n ).result;
        auto w = letter_game_refuter( n, 8, 12 );
        bool good = v == outcome::adam_wins && w && replay_witness( n, *w );
        ok = ok && good;
        detail += std::string( name ) + ( good ? " non-HD with witness; " : " NOT refuted; " );
    }
    net e = load( "example1.ocn" );
    bool hd = is_history_deterministic( e ).result == outcome::eve_wins;
    auto sets = compute_good_sets( e, 16, hd_caps( e ) );
    int down = e.find_transition( "X b -1 Y" );
    int b = e.find_letter( "b" );
    bool threshold = down >= 0;
    for ( long k = 1; k <= 40 && threshold; ++k )
    {
        auto c = resolver_move( e, sets, { e.find_state( "X" ), k }, b );
        threshold = c.blocked.empty() && ( c.transition == down ) == ( k > 1 );
    }
    ok = ok && hd && threshold;
    detail += std::string( "example1 " ) + ( hd ? "HD" : "NOT HD" ) + ", down-b iff counter > 1 for k<=40: " +
              ( threshold ? "yes" : "no" );
    report( 4, "known examples", ok, detail );
}

void determinization_check()
{
    bool ok = true;
    std::string detail;
    for ( const char* name : { "counting.ocn", "balance.ocn", "example1.ocn" } )
    {
        auto t0 = clock_type::now();
        net n = load( name );
        auto d = determinize( n );
        bool equiv = !bounded_equiv( n, d.doca, 8 );
        bool audit = audit_bijection( n, d.candidate, oracle_from_sets( d.sets ),
                                      d.period.threshold + 3 * d.period.period )
                         .empty();
        double s = seconds_since( t0 );
        bool good = equiv && audit && is_deterministic( d.doca ) && s < 300;
        ok = ok && good;
        detail += fmt( "%s I=%ld P=%ld %s %.1fs; ", name, d.period.threshold, d.period.period,
                       good ? "ok" : "FAILED", s );
    }
    report( 5, "determinization", ok, detail + "(limit 300s per net)" );
}

void inclusion_universality()
{
    rng_t rng( 505 );
    auto nets = random_hd_nets( rng, 100, { 3, 2, 5 } );
    int conclusive = 0, wrong = 0;
    for ( int i = 0; i < 50; ++i )
    {
        auto v = hd_inclusion( nets[2 * i], nets[2 * i + 1] ).result;
        if ( v == outcome::inconclusive )
            continue;
        ++conclusive;
        wrong += ( v == outcome::eve_wins ) != words_included( nets[2 * i], nets[2 * i + 1], 8 );
    }
    random_net_options o{ 2, 2, 6 };
    o.final_ratio = 0.8;
    auto dense = random_hd_nets( rng, 50, o );
    int uconclusive = 0, uwrong = 0, universal = 0;
    for ( const auto& n : dense )
    {
        auto v = universality( n ).result;
        if ( v == outcome::inconclusive )
            continue;
        ++uconclusive;
        bool all = true;
        for ( const auto& w : all_words( n.num_letters(), 8 ) )
            if ( !oracle::run_accepts( n, w ) || !is_live_prefix( n, w ) )
            {
                all = false;
                break;
            }
        universal += all;
        uwrong += ( v == outcome::eve_wins ) != all;
    }
    report( 6, "inclusion and universality", wrong == 0 && uwrong == 0,
            fmt( "inclusion %d/50 conclusive, %d wrong; universality %d/50 conclusive (%d universal), %d wrong",
                 conclusive, wrong, uconclusive, universal, uwrong ) );
}

void afa_gadget()
{
    auto t0 = clock_type::now();
    rng_t rng( 707 );
    int conclusive = 0, wrong = 0, empty = 0;
    for ( int i = 0; i < 50; ++i )
    {
        unary_afa a = random_afa( rng, 1 + i % 4 );
        net n = afa_to_ocn( a );
        auto verdict = is_history_deterministic( n );
        auto v = verdict.result;
        if ( i % 5 == 0 )
        {
            sim_instance inst = g1_to_sim( n );
            sim_arena sa = build_sim_arena( inst.query() );
            engine.check( sa.arena, sa.start, verdict, "afa gadget " + a.render() );
        }
        if ( v == outcome::inconclusive )
            continue;
        ++conclusive;
        empty += afa_empty( a );
        wrong += ( v == outcome::eve_wins ) != afa_empty( a );
    }
    double s = seconds_since( t0 );
    report( 7, "AFA gadget", wrong == 0 && conclusive >= 45 && s < 600,
            fmt( "%d/50 conclusive (need 45), %d empty, %d wrong, %.1fs (limit 600s)", conclusive, empty, wrong, s ) );
}

void original_simulation()
{
    rng_t rng( 808 );
    int conclusive = 0, wrong = 0;
    for ( int i = 0; i < 100; ++i )
    {
        net a = random_net( rng, { 1 + i % 3, 2, 5 } );
        net b = random_net( rng, { 1 + ( i / 3 ) % 3, 2, 5 } );
        sim_query q{ &a, { a.initial, 0 }, &b, { b.initial, 0 } };
        auto fin = simulates( q );
        auto orig = simulates( q, sim_semantics::original );
        auto [a1, b1] = to_original_sim( a, b );
        auto to = simulates( { &a1, { a.initial, 0 }, &b1, { b.initial, 0 } }, sim_caps( a1, b1 ),
                             sim_semantics::original );
        auto [a2, b2] = from_original_sim( a, b );
        auto from = simulates( { &a2, { a.initial, 0 }, &b2, { b.initial, 0 } }, sim_caps( a2, b2 ) );
        sim_arena sa = build_sim_arena( q );
        engine.check( sa.arena, sa.start, fin, "simulation" );
        for ( auto [x, y] : { std::pair{ fin, to }, std::pair{ orig, from } } )
        {
            if ( x.result == outcome::inconclusive || y.result == outcome::inconclusive )
                continue;
            ++conclusive;
            wrong += x.result != y.result;
        }
    }
    report( 8, "simulation and stuck-based simulation", wrong == 0,
            fmt( "%d conclusive comparisons of 200, %d disagreements", conclusive, wrong ) );
}

void succinct_path()
{
    rng_t rng( 909 );
    int words = 0, wrong = 0;
    for ( int i = 0; i < 20; ++i )
    {
        net n = random_net( rng, { 3, 2, 7, 8 } );
        auto e = expand_binary( n );
        for ( const auto& w : all_words( n.num_letters(), 5 ) )
        {
            ++words;
            wrong += accepts( n, w ) != accepts_stepwise( e, w );
        }
    }
    // Deltas in {-g, 0, g}: dividing by g gives an isomorphic unary net.
    int compared = 0, hd_wrong = 0;
    std::uniform_int_distribution<long> scale( 2, 8 );
    for ( int i = 0; i < 20; ++i )
    {
        net unary = random_net( rng, { 2 + i % 2, 2, 5 } );
        net wide = unary;
        wide.kind = net_kind::socn;
        long g = scale( rng );
        for ( auto& t : wide.transitions )
            t.delta *= g;
        auto x = is_history_deterministic( wide ).result;
        auto y = is_history_deterministic( unary ).result;
        if ( x == outcome::inconclusive || y == outcome::inconclusive )
            continue;
        ++compared;
        hd_wrong += x != y;
    }
    report( 9, "succinct deltas", wrong == 0 && hd_wrong == 0,
            fmt( "%d words, %d membership mismatches; %d/20 HD pairs conclusive, %d mismatches", words, wrong,
                 compared, hd_wrong ) );
}

} // namespace

int main()
{
    auto t0 = clock_type::now();
    auto run = [&]( const char* name, const std::function<void()>& f ) {
        try
        {
            f();
        }
        catch ( const std::exception& e )
        {
            std::printf( "FAIL %s: exception %s\n", name, e.what() );
            ++failures;
        }
    };
    auto nets = small_corpus();
    run( "[1]", determinism_implies_hd );
    run( "[2]", [&] { reduction_coherence( nets ); } );
    run( "[3]", [&] { refuter_consistency( nets ); } );
    run( "[4]", known_witnesses );
    run( "[5]", determinization_check );
    run( "[6]", inclusion_universality );
    run( "[7]", afa_gadget );
    run( "[8]", original_simulation );
    run( "[9]", succinct_path );
    std::string detail = fmt( "%d bounded cross-checks, %zu contradictions", engine.compared, engine.contradictions.size() );
    for ( const auto& c : engine.contradictions )
        std::fprintf( stderr, "contradiction: %s\n", c.c_str() );
    report( 10, "engine soundness", engine.contradictions.empty() && engine.compared > 0, detail );
    std::printf( "total %.1fs, %d failed\n", seconds_since( t0 ), failures );
    return failures == 0 ? 0 : 1;
}
