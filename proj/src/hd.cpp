#include "ocn/hd.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace ocn
{

namespace
{

const std::string hash_letter = "__hash";

std::string fresh_state( const net& n, const std::string& base )
{
    std::string name = base;
    for ( int i = 1; n.find_state( name ) >= 0; ++i )
        name = base + std::to_string( i );
    return name;
}

void require_net( const net& n )
{
    require_valid( n );
    if ( n.kind == net_kind::oca )
        throw input_error( "token games are defined for nets without zero tests" );
}

// Minimal counter at which one of the listed moves keeps the run live.
long live_guard( const net& n, const std::vector<long>& need, const std::vector<int>& moves )
{
    long best = infinite_credit;
    for ( int ti : moves )
    {
        const auto& t = n.transitions[ti];
        if ( need[t.dst] == infinite_credit )
            continue;
        best = std::min( best, std::max( -t.delta, need[t.dst] - t.delta ) );
    }
    return best;
}

// The net read one step late: the stored letter decides the move, the
// letter being read is stored. first is the state the lag starts from.
net lagged( const net& nc, int first )
{
    net m;
    m.kind = nc.kind;
    m.letter_names = nc.letter_names;
    int hash = m.add_letter( hash_letter );
    int nl = nc.num_letters();
    m.initial = m.add_state( "__s" );
    auto copy = [&]( int q, int a ) { return 1 + q * nl + a; };
    for ( int q = 0; q < nc.num_states(); ++q )
        for ( int a = 0; a < nl; ++a )
            m.add_state( nc.state_names[q] + "@" + nc.letter_names[a] );
    std::vector<int> hashed( nc.num_states(), -1 );
    for ( int q = 0; q < nc.num_states(); ++q )
        if ( nc.is_final( q ) )
            hashed[q] = m.add_state( nc.state_names[q] + "@#", true );

    for ( int b = 0; b < nl; ++b )
        m.add_transition( m.initial, b, 0, copy( first, b ) );
    for ( const auto& t : nc.transitions )
    {
        for ( int b = 0; b < nl; ++b )
            m.add_transition( copy( t.src, t.letter ), b, t.delta, copy( t.dst, b ) );
        if ( nc.is_final( t.dst ) )
            m.add_transition( copy( t.src, t.letter ), hash, t.delta, hashed[t.dst] );
    }
    return m;
}

// The net itself, accepting only after a # read in a final state.
net with_hash_exit( const net& nc, const std::string& exit_name, int& exit_state )
{
    net m = nc;
    int hash = m.add_letter( hash_letter );
    std::fill( m.final.begin(), m.final.end(), 0 );
    exit_state = m.add_state( fresh_state( nc, exit_name ), true );
    for ( int q = 0; q < nc.num_states(); ++q )
        if ( nc.is_final( q ) )
            m.add_transition( q, hash, 0, exit_state );
    for ( int a = 0; a < m.num_letters(); ++a )
        m.add_transition( exit_state, a, 0, exit_state );
    return m;
}

net completed_without_hash( const net& n )
{
    require_net( n );
    if ( n.find_letter( hash_letter ) >= 0 )
        throw input_error( "net already uses the reserved letter " + hash_letter );
    return complete( n );
}

} // namespace

position g1_game::at( config eve, config adam ) const
{
    return { round_control( eve.state, adam.state ), adam.counter, eve.counter };
}

g1_game g1_arena( const net& n )
{
    require_net( n );
    g1_game g;
    g.num_states = n.num_states();
    monotone_arena& ar = g.arena;
    auto need = min_credit( n );
    adjacency adj( n );
    int ns = n.num_states(), nl = n.num_letters();

    for ( int pe = 0; pe < ns; ++pe )
        for ( int pa = 0; pa < ns; ++pa )
            ar.add_control( player::adam, n.is_final( pa ) && !n.is_final( pe ),
                            n.state_names[pe] + "," + n.state_names[pa] );

    std::map<std::tuple<int, int, int>, int> eve_turn, adam_turn;
    for ( int pe = 0; pe < ns; ++pe )
        for ( int pa = 0; pa < ns; ++pa )
            for ( int a = 0; a < nl; ++a )
            {
                // Adam only names letters his token can still accept after.
                long g1 = live_guard( n, need, adj.out( pa, a ) );
                if ( g1 == infinite_credit )
                    continue;
                int l = ar.add_control( player::eve, false,
                                        n.state_names[pe] + "," + n.state_names[pa] + "?" + n.letter_names[a] );
                eve_turn[{ pe, pa, a }] = l;
                ar.add_move( g.round_control( pe, pa ), l, 0, 0, n.letter_names[a], g1 );
            }

    for ( const auto& [key, l] : eve_turn )
    {
        auto [pe, pa, a] = key;
        for ( int ti : adj.out( pe, a ) )
        {
            const auto& t = n.transitions[ti];
            auto [it, fresh] = adam_turn.try_emplace( { t.dst, pa, a }, ar.num_controls() );
            if ( fresh )
                ar.add_control( player::adam, false,
                                n.state_names[t.dst] + "," + n.state_names[pa] + "!" + n.letter_names[a] );
            ar.add_move( l, it->second, 0, t.delta, n.render( t ) );
        }
    }

    for ( const auto& [key, c] : adam_turn )
    {
        auto [pe, pa, a] = key;
        for ( int ti : adj.out( pa, a ) )
        {
            const auto& t = n.transitions[ti];
            if ( need[t.dst] == infinite_credit )
                continue;
            ar.add_move( c, g.round_control( pe, t.dst ), t.delta, 0, n.render( t ),
                         std::max( -t.delta, need[t.dst] - t.delta ) );
        }
    }
    g.start = g.at( { n.initial, 0 }, { n.initial, 0 } );
    return g;
}

sim_instance g1_to_sim( const net& n )
{
    net nc = completed_without_hash( n );
    sim_instance out;
    int exit_state = 0;
    out.duplicator = with_hash_exit( nc, "__qhash", exit_state );
    out.duplicator_start = { nc.initial, 0 };
    out.spoiler = lagged( nc, nc.initial );
    out.spoiler_start = { out.spoiler.initial, 0 };
    return out;
}

std::vector<long> hd_caps( const net& n )
{
    return default_caps( n.num_states() );
}

capped_verdict is_history_deterministic( const net& n, const std::vector<long>& caps, bool want_strategy )
{
    auto inst = g1_to_sim( n );
    auto sa = build_sim_arena( inst.query() );
    return certified_solve( sa.arena, sa.start, caps, want_strategy );
}

capped_verdict is_history_deterministic( const net& n )
{
    return is_history_deterministic( n, hd_caps( n ) );
}

int adam_witness::depth() const
{
    std::function<int( int )> go = [&]( int v ) {
        int best = 0;
        for ( const auto& r : nodes[v].replies )
            if ( r.child >= 0 )
                best = std::max( best, go( r.child ) );
        return best + 1;
    };
    return root < 0 ? 0 : go( root );
}

namespace
{

class refuter
{
public:
    refuter( const net& n, long cap ) : _n( n ), _adj( n ), _live( n ), _cap( cap ) {}

    std::optional<adam_witness> run( int depth )
    {
        config_set start{ { _n.initial, 0 } };
        for ( int d = 1; d <= depth; ++d )
        {
            int root = solve( start, { _n.initial, 0 }, d );
            if ( root >= 0 )
            {
                _w.root = root;
                return _w;
            }
        }
        return std::nullopt;
    }

private:
    const net& _n;
    adjacency _adj;
    liveness _live;
    long _cap;
    adam_witness _w;
    std::map<std::tuple<config_set, config, int>, int> _memo;

    bool accepted( const config_set& s ) const
    {
        return std::any_of( s.begin(), s.end(), [&]( const config& c ) { return _n.is_final( c.state ); } );
    }

    int solve( const config_set& reach, const config& eve, int depth )
    {
        if ( depth == 0 )
            return -1;
        auto key = std::make_tuple( reach, eve, depth );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;
        int found = -1;
        for ( int a = 0; a < _n.num_letters() && found < 0; ++a )
        {
            config_set next = post( _n, _adj, reach, a );
            if ( !_live.any_live( next ) )
                continue;
            bool acc = accepted( next );
            witness_node node{ a, {} };
            bool wins = true;
            for ( int ti : _adj.out( eve.state, a ) )
            {
                const auto& t = _n.transitions[ti];
                if ( !enabled( t, eve.counter ) )
                    continue;
                config c2{ t.dst, eve.counter + t.delta };
                if ( acc && !_n.is_final( c2.state ) )
                {
                    node.replies.push_back( { ti, -1 } );
                    continue;
                }
                int child = c2.counter > _cap ? -1 : solve( next, c2, depth - 1 );
                if ( child < 0 )
                {
                    wins = false;
                    break;
                }
                node.replies.push_back( { ti, child } );
            }
            if ( !wins )
                continue;
            if ( node.replies.empty() )
                node.replies.push_back( { -1, -1 } );
            _w.nodes.push_back( std::move( node ) );
            found = static_cast<int>( _w.nodes.size() ) - 1;
        }
        _memo[key] = found;
        return found;
    }
};

} // namespace

std::optional<adam_witness> letter_game_refuter( const net& n, long cap, int depth )
{
    require_valid( n );
    if ( cap < 1 || depth < 1 )
        throw std::invalid_argument( "refuter bounds must be positive" );
    return refuter( n, cap ).run( depth );
}

std::string render_witness( const net& n, const adam_witness& w )
{
    std::function<nlohmann::ordered_json( int )> go = [&]( int v ) {
        const auto& node = w.nodes[v];
        nlohmann::ordered_json j;
        j["letter"] = n.letter_names[node.letter];
        auto replies = nlohmann::ordered_json::array();
        for ( const auto& r : node.replies )
        {
            nlohmann::ordered_json rj;
            rj["eve"] = r.transition < 0 ? nlohmann::ordered_json() : nlohmann::ordered_json( n.render( n.transitions[r.transition] ) );
            if ( r.child >= 0 )
                rj["then"] = go( r.child );
            else
                rj["result"] = r.transition < 0 ? "eve-stuck" : "word-accepted-eve-rejecting";
            replies.push_back( rj );
        }
        j["replies"] = replies;
        return j;
    };
    return w.root < 0 ? "null" : go( w.root ).dump( 2 );
}

bool replay_witness( const net& n, const adam_witness& w )
{
    adjacency adj( n );
    liveness lv( n );
    std::function<bool( int, const config_set&, const config& )> go = [&]( int v, const config_set& reach,
                                                                          const config& eve ) {
        const auto& node = w.nodes[v];
        config_set next = post( n, adj, reach, node.letter );
        if ( !lv.any_live( next ) )
            return false;
        bool acc = std::any_of( next.begin(), next.end(), [&]( const config& c ) { return n.is_final( c.state ); } );
        std::vector<int> moves;
        for ( int ti : adj.out( eve.state, node.letter ) )
            if ( enabled( n.transitions[ti], eve.counter ) )
                moves.push_back( ti );
        if ( moves.empty() )
            return node.replies.size() == 1 && node.replies[0].transition < 0;
        if ( node.replies.size() != moves.size() )
            return false;
        for ( const auto& r : node.replies )
        {
            if ( std::find( moves.begin(), moves.end(), r.transition ) == moves.end() )
                return false;
            const auto& t = n.transitions[r.transition];
            config c2{ t.dst, eve.counter + t.delta };
            if ( r.child < 0 )
            {
                if ( !acc || n.is_final( c2.state ) )
                    return false;
            }
            else if ( !go( r.child, next, c2 ) )
                return false;
        }
        return true;
    };
    return w.root >= 0 && go( w.root, { { n.initial, 0 } }, { n.initial, 0 } );
}

gadget good_transition_gadget( const net& n, int gamma )
{
    require_net( n );
    if ( !is_complete( n ) )
        throw input_error( "the good-transition gadget needs a complete net" );
    if ( gamma < 0 || gamma >= static_cast<int>( n.transitions.size() ) )
        throw input_error( "no such transition" );
    if ( n.find_letter( hash_letter ) >= 0 )
        throw input_error( "net already uses the reserved letter " + hash_letter );
    const transition g = n.transitions[gamma];

    gadget out;
    int exit_state = 0;
    out.duplicator = with_hash_exit( n, "__phash", exit_state );
    int s2 = out.duplicator.add_state( fresh_state( out.duplicator, "__s" ) );
    // On gamma's letter the only first move is gamma itself.
    out.duplicator.add_transition( s2, g.letter, g.delta, g.dst );
    for ( const auto& t : n.transitions )
        if ( t.src == g.src && t.letter != g.letter )
            out.duplicator.add_transition( s2, t.letter, t.delta, t.dst );
    out.duplicator_start = s2;
    out.duplicator.initial = s2;

    out.spoiler = lagged( n, g.src );
    out.spoiler_start = out.spoiler.initial;
    return out;
}

bool good_set::conclusive() const
{
    return std::none_of( samples.begin(), samples.end(), []( outcome o ) { return o == outcome::inconclusive; } );
}

std::optional<bool> good_set::good_at( long k ) const
{
    if ( k < 0 )
        return std::nullopt;
    if ( k <= bound() )
    {
        if ( samples[k] == outcome::inconclusive )
            return std::nullopt;
        return samples[k] == outcome::eve_wins;
    }
    if ( fit )
        return fit->contains( k );
    return std::nullopt;
}

std::string good_set::render() const
{
    std::string s;
    for ( outcome o : samples )
        s += o == outcome::eve_wins ? '1' : o == outcome::adam_wins ? '0' : '?';
    return "samples=" + s + " fit=" + ( fit ? fit->render() : std::string( "none" ) );
}

namespace
{

std::optional<semilinear_set> fit_samples( const std::vector<outcome>& samples )
{
    std::vector<bool> known;
    for ( outcome o : samples )
    {
        if ( o == outcome::inconclusive )
            break;
        known.push_back( o == outcome::eve_wins );
    }
    if ( known.size() < 9 )
        return std::nullopt;
    auto fit = detect_semilinear( known );
    if ( !fit )
        return std::nullopt;
    for ( std::size_t k = known.size(); k < samples.size(); ++k )
        if ( samples[k] != outcome::inconclusive && fit->contains( static_cast<long>( k ) ) != ( samples[k] == outcome::eve_wins ) )
            return std::nullopt;
    return fit;
}

good_set good_set_of( const net& nc, int transition, long bound, const std::vector<long>& caps )
{
    auto g = good_transition_gadget( nc, transition );
    auto sa = build_sim_arena( g.at( 0 ) );
    good_set out;
    out.transition = transition;
    for ( long k = 0; k <= bound; ++k )
    {
        position p = sa.start;
        p.k1 = p.k2 = k;
        out.samples.push_back( certified_solve( sa.arena, p, caps ).result );
    }
    out.fit = fit_samples( out.samples );
    return out;
}

} // namespace

good_set compute_good_set( const net& n, int transition, long bound, const std::vector<long>& caps )
{
    if ( bound < 8 )
        throw std::invalid_argument( "the sample bound must be at least 8" );
    return good_set_of( completed_without_hash( n ), transition, bound, caps );
}

std::vector<good_set> compute_good_sets( const net& n, long bound, const std::vector<long>& caps )
{
    if ( bound < 8 )
        throw std::invalid_argument( "the sample bound must be at least 8" );
    net nc = completed_without_hash( n );
    std::vector<good_set> out;
    for ( int t = 0; t < static_cast<int>( nc.transitions.size() ); ++t )
        out.push_back( good_set_of( nc, t, bound, caps ) );
    return out;
}

resolver_choice resolver_move( const net& n, const std::vector<good_set>& sets, const config& c, int letter )
{
    std::vector<int> cand;
    for ( int ti = 0; ti < static_cast<int>( n.transitions.size() ); ++ti )
    {
        const auto& t = n.transitions[ti];
        if ( t.src == c.state && t.letter == letter && enabled( t, c.counter ) )
            cand.push_back( ti );
    }
    std::sort( cand.begin(), cand.end(), [&]( int x, int y ) {
        return n.render( n.transitions[x] ) < n.render( n.transitions[y] );
    } );
    resolver_choice out;
    for ( int ti : cand )
    {
        if ( ti >= static_cast<int>( sets.size() ) || sets[ti].transition != ti )
            throw std::invalid_argument( "good sets do not match the net" );
        auto g = sets[ti].good_at( c.counter );
        if ( !g )
            out.blocked.emplace_back( ti, c.counter );
        else if ( *g )
        {
            out.transition = ti;
            break;
        }
    }
    return out;
}

} // namespace ocn
