#pragma once

#include "ocn/net.hpp"

#include <string>

namespace ocn
{

class parse_error : public input_error
{
public:
    parse_error( int line, int column, const std::string& what );

    int line() const { return _line; }
    int column() const { return _column; }

private:
    int _line;
    int _column;
};

struct parse_options
{
    bool allow_reserved = false;
};

net parse_net( const std::string& text, parse_options opts = {} );
net load_net( const std::string& path, parse_options opts = {} );

// Canonical: states and letters sorted, transitions sorted by rendering.
std::string emit_net( const net& n );
void save_net( const net& n, const std::string& path );

// Reindexes states and letters into canonical (lexicographic) order.
net canonical( const net& n );

} // namespace ocn
