#pragma once

// The worked examples used by the `examples` subcommand and the acceptance
// suite: inputs as text, and a replay that compares against the expected values.

#include <string>
#include <string_view>
#include <vector>

namespace qacause::golden {

// Seven-edge graph and the recursive path query.
std::string_view graph_instance();
std::string_view path_program();

// Relations R, S and the Boolean query ans <- R(x,y), S(y).
std::string_view rs_instance();
std::string_view rs_program();

// Departments and courses, the teaching-staff query, its rewriting, and the
// inclusion dependency between them.
std::string_view university_instance();
std::string_view staff_program();
std::string_view staff_rewritten_program();
std::string_view university_constraints();

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<Check> replay();

} // namespace qacause::golden
