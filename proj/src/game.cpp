#include "ocn/game.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace ocn
{

const char* to_string( outcome o )
{
    switch ( o )
    {
    case outcome::eve_wins: return "EveWins";
    case outcome::adam_wins: return "AdamWins";
    default: return "Inconclusive";
    }
}

const char* to_string( bounded_result r )
{
    switch ( r )
    {
    case bounded_result::eve_wins: return "EveWins";
    case bounded_result::adam_wins: return "AdamWins";
    default: return "Unknown";
    }
}

int finite_game::add_vertex( player p, bool is_target )
{
    owner.push_back( p );
    target.push_back( is_target ? 1 : 0 );
    succ.emplace_back();
    return size() - 1;
}

reachability_solution solve_finite_reachability( const finite_game& g )
{
    int n = g.size();
    reachability_solution sol{ std::vector<char>( n, 0 ), std::vector<int>( n, -1 ), std::vector<int>( n, -1 ) };

    std::vector<int> pred_start( n + 1, 0 );
    for ( int v = 0; v < n; ++v )
        for ( int w : g.succ[v] )
            ++pred_start[w + 1];
    for ( int v = 0; v < n; ++v )
        pred_start[v + 1] += pred_start[v];
    std::vector<int> preds( pred_start[n] ), fill( pred_start.begin(), pred_start.end() - 1 );
    for ( int v = 0; v < n; ++v )
        for ( int w : g.succ[v] )
            preds[fill[w]++] = v;

    std::vector<int> remaining( n );
    std::deque<int> queue;
    for ( int v = 0; v < n; ++v )
    {
        remaining[v] = static_cast<int>( g.succ[v].size() );
        bool dead_eve = g.owner[v] == player::eve && g.succ[v].empty();
        if ( g.target[v] || dead_eve )
        {
            sol.attractor[v] = 1;
            sol.rank[v] = 0;
            queue.push_back( v );
        }
    }
    while ( !queue.empty() )
    {
        int w = queue.front();
        queue.pop_front();
        for ( int i = pred_start[w]; i < pred_start[w + 1]; ++i )
        {
            int v = preds[i];
            if ( sol.attractor[v] )
                continue;
            if ( g.owner[v] == player::adam )
            {
                sol.attractor[v] = 1;
                sol.strategy[v] = w;
            }
            else if ( --remaining[v] == 0 )
                sol.attractor[v] = 1;
            if ( sol.attractor[v] )
            {
                sol.rank[v] = sol.rank[w] + 1;
                queue.push_back( v );
            }
        }
    }
    for ( int v = 0; v < n; ++v )
        if ( !sol.attractor[v] && g.owner[v] == player::eve )
            for ( int w : g.succ[v] )
                if ( !sol.attractor[w] )
                {
                    sol.strategy[v] = w;
                    break;
                }
    return sol;
}

int monotone_arena::add_control( player p, bool target, std::string name )
{
    owner.push_back( p );
    adam_target.push_back( target ? 1 : 0 );
    names.push_back( std::move( name ) );
    return num_controls() - 1;
}

void monotone_arena::add_move( int src, int dst, long d1, long d2, std::string label, long g1, long g2 )
{
    moves.push_back( { src, dst, d1, d2, std::max( g1, -d1 ), std::max( g2, -d2 ), std::move( label ) } );
}

std::vector<std::vector<int>> monotone_arena::out_moves() const
{
    std::vector<std::vector<int>> out( owner.size() );
    for ( std::size_t i = 0; i < moves.size(); ++i )
        out[moves[i].src].push_back( static_cast<int>( i ) );
    return out;
}

void monotone_arena::check() const
{
    for ( const auto& m : moves )
    {
        if ( m.src < 0 || m.src >= num_controls() || m.dst < 0 || m.dst >= num_controls() )
            throw std::logic_error( "arena move with undeclared control" );
        if ( owner[m.src] == player::eve && ( m.d1 != 0 || m.g1 > 0 ) )
            throw std::logic_error( "Eve move touches the Adam counter" );
        if ( owner[m.src] == player::adam && ( m.d2 != 0 || m.g2 > 0 ) )
            throw std::logic_error( "Adam move touches the Eve counter" );
    }
}

namespace
{

class truncation_builder
{
public:
    truncation_builder( const monotone_arena& a, long cap, truncation mode )
        : _arena( a ), _out( a.out_moves() ), _cap( cap ), _wide( 2 * cap ), _spread( cap )
    {
        _tg.mode = mode;
        _tg.cap = cap;
    }

    truncated_game run( const position& init )
    {
        _tg.initial = intern( lift( init ) );
        while ( !_todo.empty() )
        {
            int v = _todo.back();
            _todo.pop_back();
            expand( v );
        }
        return std::move( _tg );
    }

private:
    const monotone_arena& _arena;
    std::vector<std::vector<int>> _out;
    long _cap, _wide, _spread;
    truncated_game _tg;
    std::unordered_map<std::uint64_t, int> _index;
    std::vector<int> _todo;

    bool pessimistic() const { return _tg.mode == truncation::pessimistic; }

    static std::uint64_t key( const abstract_node& n )
    {
        const std::uint64_t off = 1ULL << 19;
        return ( static_cast<std::uint64_t>( n.control + 1 ) << 42 ) | ( static_cast<std::uint64_t>( n.z ) << 40 ) |
               ( ( static_cast<std::uint64_t>( n.a + off ) & 0xFFFFF ) << 20 ) |
               ( static_cast<std::uint64_t>( n.b + off ) & 0xFFFFF );
    }

    int intern( const abstract_node& n )
    {
        const abstract_node& k = n;
        auto [it, fresh] = _index.try_emplace( key( k ), _tg.game.size() );
        if ( !fresh )
            return it->second;
        bool target = _arena.adam_target[k.control];
        _tg.game.add_vertex( _arena.owner[k.control], target );
        _tg.edge_move.emplace_back();
        _tg.nodes.push_back( k );
        if ( !target )
            _todo.push_back( it->second );
        return it->second;
    }

    // Classifies exact counters into the abstraction.
    abstract_node lift( const position& p ) const
    {
        if ( pessimistic() )
        {
            if ( p.k1 <= _cap )
                return { p.control, zone::low, p.k1, std::min( p.k2, _wide ) };
            return high( p.control, p.k2 - p.k1 );
        }
        if ( p.k2 <= _cap )
            return { p.control, zone::low, std::min( p.k1, _wide ), p.k2 };
        return high( p.control, p.k1 - p.k2 );
    }

    abstract_node high( int control, long e ) const
    {
        // The trailing counter is only known to be at least cap + 1 + e.
        if ( e < -_spread )
            return { control, zone::top, 0, 0 };
        return { control, zone::high, std::min( e, _spread ), 0 };
    }

    void edge( int v, const abstract_node& n, int move )
    {
        int w = intern( n );
        _tg.game.succ[v].push_back( w );
        _tg.edge_move[v].push_back( move );
    }

    void expand( int v )
    {
        abstract_node n = _tg.nodes[v];
        for ( int mi : _out[n.control] )
        {
            const auto& m = _arena.moves[mi];
            if ( n.z == zone::top )
            {
                long g_low = pessimistic() ? m.g2 : m.g1;
                long d_low = pessimistic() ? m.d2 : m.d1;
                if ( n.a >= g_low )
                    edge( v, { m.dst, zone::top, std::min( n.a + d_low, _wide ), 0 }, mi );
                continue;
            }
            if ( n.z == zone::low )
            {
                if ( n.a < m.g1 || n.b < m.g2 )
                    continue;
                edge( v, lift( { m.dst, n.a + m.d1, n.b + m.d2 } ), mi );
                continue;
            }
            long e = n.a;
            // The side whose counter is exact below the cap can move back down.
            bool mover_is_high_side = pessimistic() ? _arena.owner[n.control] == player::adam
                                                    : _arena.owner[n.control] == player::eve;
            long d_high = pessimistic() ? m.d1 : m.d2;
            long g_high = pessimistic() ? m.g1 : m.g2;
            long d_low = pessimistic() ? m.d2 : m.d1;
            long g_low = pessimistic() ? m.g2 : m.g1;
            if ( mover_is_high_side )
            {
                // The concrete value above the cap is unknown: every choice is offered.
                edge( v, high( m.dst, e - d_high + d_low ), mi );
                for ( long k = std::max( _cap + 1, g_high ); k + d_high <= _cap; ++k )
                {
                    long other = std::min( k + e + d_low, _wide );
                    if ( k + e < g_low || other < 0 )
                        continue;
                    if ( pessimistic() )
                        edge( v, { m.dst, zone::low, k + d_high, other }, mi );
                    else
                        edge( v, { m.dst, zone::low, other, k + d_high }, mi );
                }
            }
            else
            {
                // Only moves available at every concretization.
                long least_high = _cap + 1;
                long least_low = std::max( 0L, _cap + 1 + e );
                if ( least_low < g_low || least_high < g_high )
                    continue;
                edge( v, high( m.dst, e + d_low - d_high ), mi );
            }
        }
    }
};

} // namespace

std::string truncated_game::describe( int v, const monotone_arena& a ) const
{
    const auto& n = nodes[v];
    switch ( n.z )
    {
    case zone::top:
        return a.names[n.control] + ( mode == truncation::pessimistic ? " k1=top k2=" : " k2=top k1=" ) +
               std::to_string( n.a );
    case zone::high:
        return a.names[n.control] + " high e=" + std::to_string( n.a );
    default:
        return a.names[n.control] + " k1=" + std::to_string( n.a ) + " k2=" + std::to_string( n.b );
    }
}

truncated_game truncate( const monotone_arena& a, const position& init, long cap, truncation mode )
{
    if ( cap < 1 )
        throw std::invalid_argument( "cap must be at least 1" );
    a.check();
    return truncation_builder( a, cap, mode ).run( init );
}

truncated_game pessimistic_truncation( const monotone_arena& a, const position& init, long cap )
{
    return truncate( a, init, cap, truncation::pessimistic );
}

truncated_game optimistic_truncation( const monotone_arena& a, const position& init, long cap )
{
    return truncate( a, init, cap, truncation::optimistic );
}

std::vector<long> default_caps( long base )
{
    base = std::max( base, 1L );
    return { base, 2 * base, 4 * base, 8 * base, 16 * base };
}

namespace
{

std::vector<std::pair<std::string, std::string>> extract_strategy( const monotone_arena& a, const truncated_game& tg,
                                                                     const reachability_solution& sol, player winner )
{
    std::vector<std::pair<std::string, std::string>> out;
    for ( int v = 0; v < tg.game.size(); ++v )
    {
        if ( tg.game.owner[v] != winner || sol.strategy[v] < 0 )
            continue;
        bool adam_side = sol.attractor[v] != 0;
        if ( adam_side != ( winner == player::adam ) )
            continue;
        const auto& succ = tg.game.succ[v];
        auto it = std::find( succ.begin(), succ.end(), sol.strategy[v] );
        int mi = tg.edge_move[v][it - succ.begin()];
        out.emplace_back( tg.describe( v, a ), a.moves[mi].label );
    }
    std::sort( out.begin(), out.end() );
    return out;
}

} // namespace

capped_verdict certified_solve( const monotone_arena& a, const position& init, const std::vector<long>& caps,
                                bool want_strategy )
{
    if ( caps.empty() )
        throw std::invalid_argument( "empty cap schedule" );
    capped_verdict v;
    for ( long cap : caps )
    {
        v.cap_used = cap;
        auto pess = pessimistic_truncation( a, init, cap );
        auto ps = solve_finite_reachability( pess.game );
        if ( !ps.attractor[pess.initial] )
        {
            v.result = outcome::eve_wins;
            if ( want_strategy )
                v.strategy = extract_strategy( a, pess, ps, player::eve );
            return v;
        }
        auto opt = optimistic_truncation( a, init, cap );
        auto os = solve_finite_reachability( opt.game );
        if ( os.attractor[opt.initial] )
        {
            v.result = outcome::adam_wins;
            if ( want_strategy )
                v.strategy = extract_strategy( a, opt, os, player::adam );
            return v;
        }
    }
    v.result = outcome::inconclusive;
    return v;
}

namespace
{

class bounded_search
{
public:
    bounded_search( const monotone_arena& a, long cap ) : _a( a ), _out( a.out_moves() ), _cap( cap ) {}

    // Both questions are answered within the counter cap and the depth.
    bool adam_forces( int c, long k1, long k2, int depth ) { return eval( c, k1, k2, depth, true ); }
    bool eve_survives( int c, long k1, long k2, int depth ) { return eval( c, k1, k2, depth, false ); }

private:
    const monotone_arena& _a;
    std::vector<std::vector<int>> _out;
    long _cap;
    std::unordered_map<std::uint64_t, char> _memo[2];

    bool eval( int c, long k1, long k2, int depth, bool adam_goal )
    {
        if ( _a.adam_target[c] )
            return adam_goal;
        if ( k1 > _cap || k2 > _cap )
            return false;
        std::uint64_t key = ( static_cast<std::uint64_t>( c ) << 40 ) | ( static_cast<std::uint64_t>( k1 ) << 28 ) |
                            ( static_cast<std::uint64_t>( k2 ) << 16 ) | static_cast<std::uint64_t>( depth );
        auto& memo = _memo[adam_goal ? 0 : 1];
        if ( auto it = memo.find( key ); it != memo.end() )
            return it->second;

        bool adam_owner = _a.owner[c] == player::adam;
        bool any = false, all = true, moved = false;
        for ( int mi : _out[c] )
        {
            const auto& m = _a.moves[mi];
            if ( k1 < m.g1 || k2 < m.g2 )
                continue;
            if ( !moved && depth == 0 )
            {
                moved = true;
                break;
            }
            moved = true;
            bool r = eval( m.dst, k1 + m.d1, k2 + m.d2, depth - 1, adam_goal );
            any = any || r;
            all = all && r;
            bool mover_goal = adam_owner == adam_goal;
            if ( mover_goal ? any : !all )
                break;
        }
        bool res;
        if ( !moved )
            res = adam_goal ? !adam_owner : adam_owner;
        else if ( depth == 0 )
            res = !adam_goal;
        else
            res = adam_owner == adam_goal ? any : all;
        memo[key] = res ? 1 : 0;
        return res;
    }
};

} // namespace

namespace
{

// Some reachable control is a target or a place where Eve may be stuck.
bool adam_can_score( const monotone_arena& a, int from )
{
    auto out = a.out_moves();
    std::vector<char> seen( a.num_controls(), 0 );
    std::vector<int> todo{ from };
    seen[from] = 1;
    while ( !todo.empty() )
    {
        int c = todo.back();
        todo.pop_back();
        if ( a.adam_target[c] )
            return true;
        bool always_moves = false;
        for ( int mi : out[c] )
        {
            const auto& m = a.moves[mi];
            always_moves = always_moves || ( m.g1 <= 0 && m.g2 <= 0 );
            if ( !seen[m.dst] )
            {
                seen[m.dst] = 1;
                todo.push_back( m.dst );
            }
        }
        if ( a.owner[c] == player::eve && !always_moves )
            return true;
    }
    return false;
}

} // namespace

bounded_result brute_force_bounded( const monotone_arena& a, const position& init, long cap, int depth )
{
    if ( cap < 1 || depth < 0 )
        throw std::invalid_argument( "bounds must be positive" );
    if ( cap >= ( 1L << 12 ) || depth >= ( 1 << 16 ) )
        throw std::invalid_argument( "bounds too large for the bounded search" );
    if ( !adam_can_score( a, init.control ) )
        return bounded_result::eve_wins;
    bounded_search s( a, cap );
    if ( s.adam_forces( init.control, init.k1, init.k2, depth ) )
        return bounded_result::adam_wins;
    if ( s.eve_survives( init.control, init.k1, init.k2, depth ) )
        return bounded_result::eve_wins;
    return bounded_result::unknown;
}

} // namespace ocn
