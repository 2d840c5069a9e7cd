#include "ocn/determinize.hpp"
#include "ocn/gadgets.hpp"
#include "ocn/hd.hpp"
#include "ocn/lang_ops.hpp"
#include "ocn/sim.hpp"
#include "ocn/text_format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

using namespace ocn;

namespace
{

enum exit_code { positive = 0, negative = 1, inconclusive = 2, bad_input = 3 };

int from_outcome( outcome o )
{
    switch ( o )
    {
    case outcome::eve_wins: return positive;
    case outcome::adam_wins: return negative;
    default: return inconclusive;
    }
}

std::vector<long> parse_caps( const std::string& text )
{
    std::vector<long> caps;
    std::istringstream in( text );
    std::string tok;
    while ( std::getline( in, tok, ',' ) )
    {
        std::size_t used = 0;
        long v = -1;
        try
        {
            v = std::stol( tok, &used );
        }
        catch ( const std::exception& )
        {
        }
        if ( used != tok.size() || v < 1 )
            throw input_error( "bad cap '" + tok + "'" );
        caps.push_back( v );
    }
    if ( caps.empty() )
        throw input_error( "empty cap list" );
    return caps;
}

net load( const std::string& path )
{
    return load_net( path );
}

int state_of( const net& n, const std::string& name )
{
    int q = n.find_state( name );
    if ( q < 0 )
        throw input_error( "unknown state '" + name + "'" );
    return q;
}

int transition_of( const net& n, const std::string& text )
{
    int t = n.find_transition( text );
    if ( t >= 0 )
        return t;
    if ( !text.empty() && std::all_of( text.begin(), text.end(), ::isdigit ) )
    {
        long i = std::stol( text );
        if ( i < static_cast<long>( n.transitions.size() ) )
            return static_cast<int>( i );
    }
    throw input_error( "unknown transition '" + text + "'" );
}

void print_verdict( const char* yes, const char* no, const capped_verdict& v )
{
    const char* word = v.result == outcome::eve_wins ? yes : v.result == outcome::adam_wins ? no : "inconclusive";
    std::cout << "verdict: " << word << "\ncap: " << v.cap_used << "\n";
}

int check_hd( const std::string& file, const std::string& caps_text, long refuter_cap, int depth )
{
    net n = load( file );
    auto v = caps_text.empty() ? is_history_deterministic( n ) : is_history_deterministic( n, parse_caps( caps_text ) );
    print_verdict( "HD", "not-HD", v );
    if ( v.result == outcome::adam_wins )
    {
        if ( auto w = letter_game_refuter( n, refuter_cap, depth ) )
            std::cout << "witness:\n" << render_witness( n, *w ) << "\n";
        else
            std::cout << "witness: none within cap " << refuter_cap << " depth " << depth << "\n";
    }
    return from_outcome( v.result );
}

int simulate( const std::vector<std::string>& args, bool original, const std::string& caps_text )
{
    net a = load( args[0] );
    net b = load( args[3] );
    auto counter = []( const std::string& s ) {
        std::size_t used = 0;
        long k = -1;
        try
        {
            k = std::stol( s, &used );
        }
        catch ( const std::exception& )
        {
        }
        if ( used != s.size() || k < 0 )
            throw input_error( "bad counter value '" + s + "'" );
        return k;
    };
    sim_query q{ &a, { state_of( a, args[1] ), counter( args[2] ) }, &b, { state_of( b, args[4] ), counter( args[5] ) } };
    auto sem = original ? sim_semantics::original : sim_semantics::final_state;
    auto v = caps_text.empty() ? simulates( q, sem ) : simulates( q, parse_caps( caps_text ), sem );
    print_verdict( "simulates", "does-not-simulate", v );
    return from_outcome( v.result );
}

int member( const std::string& file, const std::string& text, bool prefix )
{
    net n = load( file );
    word w = n.parse_word( text );
    bool yes = prefix ? is_live_prefix( n, w ) : accepts( n, w );
    std::cout << ( prefix ? ( yes ? "live-prefix" : "dead-prefix" ) : ( yes ? "accepted" : "rejected" ) ) << "\n";
    return yes ? positive : negative;
}

int lang_verb( const std::string& verb, const std::vector<std::string>& files )
{
    net a = load( files[0] );
    try
    {
        capped_verdict v;
        if ( verb == "universal" )
        {
            v = universality( a );
            print_verdict( "universal", "not-universal", v );
        }
        else
        {
            net b = load( files[1] );
            v = verb == "include" ? hd_inclusion( a, b ) : hd_equivalence( a, b );
            if ( verb == "include" )
                print_verdict( "included", "not-included", v );
            else
                print_verdict( "equivalent", "not-equivalent", v );
        }
        return from_outcome( v.result );
    }
    catch ( const not_hd_error& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        if ( !e.witness.empty() )
            std::cerr << "witness:\n" << e.witness << "\n";
        return bad_input;
    }
}

int good_set_cmd( const std::string& file, const std::string& trans, long bound )
{
    net n = load( file );
    int t = transition_of( n, trans );
    auto s = compute_good_set( n, t, bound, hd_caps( n ) );
    std::cout << "transition: " << n.render( n.transitions[t] ) << "\n" << s.render() << "\n";
    if ( !s.conclusive() )
        return inconclusive;
    return s.fit ? positive : inconclusive;
}

int determinize_cmd( const std::string& file, const std::string& out )
{
    net n = load( file );
    auto hd = is_history_deterministic( n );
    if ( hd.result == outcome::adam_wins )
    {
        std::cout << "verdict: not-HD\n";
        return negative;
    }
    try
    {
        auto d = determinize( n );
        save_net( d.doca, out );
        std::cout << "threshold: " << d.period.threshold << "\nperiod: " << d.period.period
                  << "\nstates: " << d.doca.num_states() << "\ntransitions: " << d.doca.transitions.size() << "\n";
        return positive;
    }
    catch ( const goodness_unknown& e )
    {
        std::cout << "inconclusive: " << e.what() << "\n";
        return inconclusive;
    }
}

int corpus_cmd( const std::string& kind, unsigned seed, int count, const std::string& dir )
{
    if ( count < 1 )
        throw input_error( "count must be positive" );
    std::vector<corpus_entry> entries;
    if ( kind == "afa" )
        entries = write_afa_corpus( dir, seed, count );
    else if ( kind == "socn" )
        entries = write_socn_corpus( dir, seed, count );
    else
        entries = write_doca_corpus( dir, seed, count );
    for ( const auto& e : entries )
        std::cout << dir << "/" << e.path << " " << e.label << " " << e.oracle << " " << e.bounds << "\n";
    return positive;
}

int play( const std::string& file, long bound )
{
    net n = load( file );
    if ( bound < 0 )
        bound = std::max( 16L, 3L * n.num_states() + 8 );
    auto sets = compute_good_sets( n, bound, hd_caps( n ) );
    adjacency adj( n );
    liveness live( n );
    config eve{ n.initial, 0 };
    config_set reach{ eve };
    std::cout << "eve at " << n.render( eve ) << "\n";
    for ( std::string line; std::cout << "> " << std::flush, std::getline( std::cin, line ); )
    {
        line.erase( 0, line.find_first_not_of( " \t" ) );
        line.erase( line.find_last_not_of( " \t\r" ) + 1 );
        if ( line.empty() )
            continue;
        if ( line == "quit" )
            break;
        int a = n.find_letter( line );
        if ( a < 0 )
        {
            std::cout << "unknown letter '" << line << "'\n";
            continue;
        }
        config_set next = post( n, adj, reach, a );
        if ( !live.any_live( next ) )
        {
            std::cout << "refused: the word would no longer be a live prefix\n";
            continue;
        }
        auto choice = resolver_move( n, sets, eve, a );
        int ti = choice.transition;
        if ( ti < 0 )
        {
            for ( const auto& [t, k] : choice.blocked )
                std::cout << "goodness unknown: " << n.render( n.transitions[t] ) << " at " << k << "\n";
            for ( int t : adj.out( eve.state, a ) )
                if ( enabled( n.transitions[t], eve.counter ) &&
                     ( ti < 0 || n.render( n.transitions[t] ) < n.render( n.transitions[ti] ) ) )
                    ti = t;
            if ( ti >= 0 )
                std::cout << "no good transition known; playing the least enabled one\n";
        }
        if ( ti < 0 )
        {
            std::cout << "eve is stuck on a live prefix: eve loses\n";
            return negative;
        }
        const auto& t = n.transitions[ti];
        eve = { t.dst, eve.counter + t.delta };
        reach = std::move( next );
        std::cout << "eve plays " << n.render( t ) << "\neve at " << n.render( eve ) << "\n";
        bool accepted = std::any_of( reach.begin(), reach.end(), [&]( const config& c ) { return n.is_final( c.state ); } );
        if ( accepted && !n.is_final( eve.state ) )
        {
            std::cout << "word accepted but eve's run is not: eve loses\n";
            return negative;
        }
    }
    std::cout << "eve survived\n";
    return positive;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "One-counter nets: history-determinism and related decisions" };
    app.require_subcommand( 1 );

    std::string file, file_b, text, caps, out, dir;
    std::vector<std::string> sim_args, files;
    long refuter_cap = 8, bound = 16, play_bound = -1;
    int depth = 12, count = 10;
    unsigned seed = 1;
    bool original = false;

    auto* hd = app.add_subcommand( "check-hd", "decide history-determinism" );
    hd->add_option( "FILE", file )->required();
    hd->add_option( "--caps", caps, "comma-separated counter caps" );
    hd->add_option( "--refuter-cap", refuter_cap, "counter cap for the witness search" );
    hd->add_option( "--depth", depth, "round bound for the witness search" );

    auto* sim = app.add_subcommand( "simulate", "decide simulation between two configurations" );
    sim->add_option( "ARGS", sim_args, "FILE_A STATE_A K_A FILE_B STATE_B K_B" )->required()->expected( 6 );
    sim->add_flag( "--original-sim", original, "stuck-based winning condition" );
    sim->add_option( "--caps", caps, "comma-separated counter caps" );

    auto* mem = app.add_subcommand( "member", "exact membership" );
    mem->add_option( "FILE", file )->required();
    mem->add_option( "WORD", text )->required();
    auto* pre = app.add_subcommand( "prefix", "live-prefix test" );
    pre->add_option( "FILE", file )->required();
    pre->add_option( "WORD", text )->required();

    auto* inc = app.add_subcommand( "include", "language inclusion of history-deterministic nets" );
    inc->add_option( "FILES", files, "FILE_A FILE_B" )->required()->expected( 2 );
    auto* eq = app.add_subcommand( "equiv", "language equivalence of history-deterministic nets" );
    eq->add_option( "FILES", files, "FILE_A FILE_B" )->required()->expected( 2 );
    auto* uni = app.add_subcommand( "universal", "universality" );
    uni->add_option( "FILE", file )->required();

    auto* gs = app.add_subcommand( "good-set", "counter values where a transition is good" );
    gs->add_option( "FILE", file )->required();
    gs->add_option( "TRANSITION", text, "rendered transition or index" )->required();
    gs->add_option( "--bound", bound, "largest counter sampled" );

    auto* det = app.add_subcommand( "determinize", "build an equivalent deterministic one-counter automaton" );
    det->add_option( "FILE", file )->required();
    det->add_option( "-o", out, "output file" )->required();

    auto* ga = app.add_subcommand( "gen-afa", "labelled corpus from unary alternating automata" );
    auto* gso = app.add_subcommand( "gen-socn", "labelled corpus from succinct counter games" );
    auto* gd = app.add_subcommand( "gen-doca", "labelled corpus from deterministic automata pairs" );
    for ( auto* g : { ga, gso, gd } )
    {
        g->add_option( "SEED", seed )->required();
        g->add_option( "N", count )->required();
        g->add_option( "--dir", dir, "output directory" );
    }

    auto* pl = app.add_subcommand( "play", "letter game against the resolver" );
    pl->add_option( "FILE", file )->required();
    pl->add_option( "--bound", play_bound, "largest counter sampled for good sets" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e );
        return bad_input;
    }

    try
    {
        if ( *hd )
            return check_hd( file, caps, refuter_cap, depth );
        if ( *sim )
            return simulate( sim_args, original, caps );
        if ( *mem || *pre )
            return member( file, text, static_cast<bool>( *pre ) );
        if ( *inc )
            return lang_verb( "include", files );
        if ( *eq )
            return lang_verb( "equiv", files );
        if ( *uni )
            return lang_verb( "universal", { file } );
        if ( *gs )
            return good_set_cmd( file, text, bound );
        if ( *det )
            return determinize_cmd( file, out );
        if ( *ga )
            return corpus_cmd( "afa", seed, count, dir.empty() ? "corpus-afa" : dir );
        if ( *gso )
            return corpus_cmd( "socn", seed, count, dir.empty() ? "corpus-socn" : dir );
        if ( *gd )
            return corpus_cmd( "doca", seed, count, dir.empty() ? "corpus-doca" : dir );
        if ( *pl )
            return play( file, play_bound );
    }
    catch ( const parse_error& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    catch ( const input_error& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    catch ( const std::invalid_argument& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}
