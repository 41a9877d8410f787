#pragma once

#include <sstream>
#include <string>

#include "gpcf/suites.hpp"

namespace gpcf {

// readable gtest failure messages
inline void PrintTo(const Move& m, std::ostream* os) { *os << move_str(m); }

}  // namespace gpcf

namespace gpcf::tu {

// "R.Q L.Q L.Ans(3) R.Ans(3)" -> Position
inline Position pos(const std::string& text) {
    std::istringstream in(text);
    Position s;
    std::string w;
    while (in >> w) s.push_back(parse_move(w));
    return s;
}

inline Move mv(const std::string& text) { return parse_move(text); }

inline std::string data_file(const std::string& name) { return std::string(GPCF_TEST_DATA) + "/" + name; }

inline Strategy den(const std::string& term, std::uint64_t y_depth = 32) { return denote({}, parse(term), y_depth); }

inline Bounds small() { return Bounds{3, 2, 10, 100000}; }

}  // namespace gpcf::tu
