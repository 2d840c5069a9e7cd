#include "ocn/text_format.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

namespace ocn
{

parse_error::parse_error( int line, int column, const std::string& what )
    : input_error( "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + what ),
      _line( line ), _column( column )
{
}

namespace
{

struct token
{
    std::string text;
    int column;
};

std::vector<token> tokenize( const std::string& line )
{
    std::vector<token> out;
    std::size_t i = 0;
    while ( i < line.size() )
    {
        while ( i < line.size() && std::isspace( static_cast<unsigned char>( line[i] ) ) )
            ++i;
        if ( i >= line.size() || line[i] == '#' )
            break;
        std::size_t start = i;
        while ( i < line.size() && !std::isspace( static_cast<unsigned char>( line[i] ) ) )
            ++i;
        out.push_back( { line.substr( start, i - start ), static_cast<int>( start ) + 1 } );
    }
    return out;
}

long parse_delta( const token& t, int line, net_kind kind )
{
    static const std::regex shape( "[+-]?[0-9]+" );
    if ( !std::regex_match( t.text, shape ) || t.text.size() > 18 )
        throw parse_error( line, t.column, "malformed delta '" + t.text + "'" );
    long d = std::stol( t.text );
    if ( kind != net_kind::socn && ( d < -1 || d > 1 ) )
        throw parse_error( line, t.column, "delta '" + t.text + "' must be -1, 0 or +1" );
    return d;
}

} // namespace

net parse_net( const std::string& text, parse_options opts )
{
    std::vector<std::pair<int, std::vector<token>>> lines;
    {
        std::istringstream in( text );
        std::string raw;
        int no = 0;
        while ( std::getline( in, raw ) )
        {
            ++no;
            auto toks = tokenize( raw );
            if ( !toks.empty() )
                lines.emplace_back( no, std::move( toks ) );
        }
    }
    if ( lines.empty() )
        throw parse_error( 1, 1, "empty input" );

    net n;
    const auto& head = lines.front();
    const std::string& kind = head.second[0].text;
    if ( kind == "ocn" )
        n.kind = net_kind::ocn;
    else if ( kind == "oca" )
        n.kind = net_kind::oca;
    else if ( kind == "socn" )
        n.kind = net_kind::socn;
    else
        throw parse_error( head.first, head.second[0].column, "expected header ocn, oca or socn" );
    if ( head.second.size() > 1 )
        throw parse_error( head.first, head.second[1].column, "unexpected token after header" );

    int initial = -1;
    for ( std::size_t li = 1; li < lines.size(); ++li )
    {
        auto& [no, toks] = lines[li];
        const std::string& key = toks[0].text;
        if ( key == "alphabet" )
        {
            for ( std::size_t i = 1; i < toks.size(); ++i )
            {
                if ( is_reserved_letter( toks[i].text ) && !opts.allow_reserved )
                    throw parse_error( no, toks[i].column, "letter '" + toks[i].text + "' is reserved" );
                if ( toks[i].text == "eps" || toks[i].text == "epsilon" || toks[i].text == "\xCE\xB5" )
                    throw parse_error( no, toks[i].column, "epsilon letters are not supported" );
                if ( n.find_letter( toks[i].text ) >= 0 )
                    throw parse_error( no, toks[i].column, "duplicate letter '" + toks[i].text + "'" );
                n.add_letter( toks[i].text );
            }
        }
        else if ( key == "state" )
        {
            if ( toks.size() < 2 )
                throw parse_error( no, toks[0].column, "state needs a name" );
            if ( n.find_state( toks[1].text ) >= 0 )
                throw parse_error( no, toks[1].column, "duplicate state '" + toks[1].text + "'" );
            int q = n.add_state( toks[1].text );
            for ( std::size_t i = 2; i < toks.size(); ++i )
            {
                if ( toks[i].text == "init" )
                {
                    if ( initial >= 0 )
                        throw parse_error( no, toks[i].column, "second initial state" );
                    initial = q;
                }
                else if ( toks[i].text == "final" )
                    n.final[q] = 1;
                else
                    throw parse_error( no, toks[i].column, "unknown state flag '" + toks[i].text + "'" );
            }
        }
        else if ( key != "trans" )
            throw parse_error( no, toks[0].column, "unknown directive '" + key + "'" );
    }
    if ( initial < 0 )
        throw parse_error( head.first, 1, "no initial state declared" );
    n.initial = initial;

    std::size_t arity = n.kind == net_kind::oca ? 6 : 5;
    for ( std::size_t li = 1; li < lines.size(); ++li )
    {
        auto& [no, toks] = lines[li];
        if ( toks[0].text != "trans" )
            continue;
        if ( toks.size() != arity )
        {
            int col = toks.size() > arity ? toks[arity].column : toks.back().column;
            throw parse_error( no, col, "transition needs " + std::to_string( arity - 1 ) + " fields" );
        }
        std::size_t k = 1;
        int src = n.find_state( toks[k].text );
        if ( src < 0 )
            throw parse_error( no, toks[k].column, "undeclared state '" + toks[k].text + "'" );
        ++k;
        guard g = guard::none;
        if ( n.kind == net_kind::oca )
        {
            if ( toks[k].text == "zero" )
                g = guard::zero;
            else if ( toks[k].text == "nonzero" )
                g = guard::nonzero;
            else
                throw parse_error( no, toks[k].column, "guard must be zero or nonzero" );
            ++k;
        }
        int a = n.find_letter( toks[k].text );
        if ( a < 0 )
            throw parse_error( no, toks[k].column, "unknown letter '" + toks[k].text + "'" );
        ++k;
        long d = parse_delta( toks[k], no, n.kind );
        if ( g == guard::zero && d < 0 )
            throw parse_error( no, toks[k].column, "zero-guarded transition cannot decrement" );
        ++k;
        int dst = n.find_state( toks[k].text );
        if ( dst < 0 )
            throw parse_error( no, toks[k].column, "undeclared state '" + toks[k].text + "'" );
        n.add_transition( src, a, d, dst, g );
    }
    return canonical( n );
}

net load_net( const std::string& path, parse_options opts )
{
    std::ifstream in( path );
    if ( !in )
        throw input_error( "cannot open '" + path + "'" );
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_net( buf.str(), opts );
}

net canonical( const net& n )
{
    std::vector<int> so( n.num_states() ), lo( n.num_letters() );
    std::iota( so.begin(), so.end(), 0 );
    std::iota( lo.begin(), lo.end(), 0 );
    std::sort( so.begin(), so.end(), [&]( int x, int y ) { return n.state_names[x] < n.state_names[y]; } );
    std::sort( lo.begin(), lo.end(), [&]( int x, int y ) { return n.letter_names[x] < n.letter_names[y]; } );
    std::vector<int> smap( so.size() ), lmap( lo.size() );
    net out;
    out.kind = n.kind;
    for ( std::size_t i = 0; i < so.size(); ++i )
    {
        smap[so[i]] = static_cast<int>( i );
        out.state_names.push_back( n.state_names[so[i]] );
        out.final.push_back( n.final[so[i]] );
    }
    for ( std::size_t i = 0; i < lo.size(); ++i )
    {
        lmap[lo[i]] = static_cast<int>( i );
        out.letter_names.push_back( n.letter_names[lo[i]] );
    }
    out.initial = smap[n.initial];
    std::vector<std::pair<std::string, transition>> ts;
    for ( const auto& t : n.transitions )
    {
        transition u{ smap[t.src], lmap[t.letter], t.delta, smap[t.dst], t.grd };
        ts.emplace_back( out.render( u ), u );
    }
    std::sort( ts.begin(), ts.end(), []( const auto& x, const auto& y ) { return x.first < y.first; } );
    ts.erase( std::unique( ts.begin(), ts.end(), []( const auto& x, const auto& y ) { return x.first == y.first; } ),
              ts.end() );
    for ( auto& [_, t] : ts )
        out.transitions.push_back( t );
    return out;
}

std::string emit_net( const net& raw )
{
    net n = canonical( raw );
    std::ostringstream out;
    out << ( n.kind == net_kind::ocn ? "ocn" : n.kind == net_kind::oca ? "oca" : "socn" ) << "\n";
    out << "alphabet";
    for ( const auto& a : n.letter_names )
        out << " " << a;
    out << "\n";
    for ( int q = 0; q < n.num_states(); ++q )
    {
        out << "state " << n.state_names[q];
        if ( q == n.initial )
            out << " init";
        if ( n.is_final( q ) )
            out << " final";
        out << "\n";
    }
    for ( const auto& t : n.transitions )
        out << "trans " << n.render( t ) << "\n";
    return out.str();
}

void save_net( const net& n, const std::string& path )
{
    std::ofstream out( path );
    if ( !out )
        throw input_error( "cannot write '" + path + "'" );
    out << emit_net( n );
}

} // namespace ocn
