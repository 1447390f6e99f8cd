#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "geoproof/problem.hpp"

#ifndef GEOPROOF_PROBLEMS_DIR
#error "tests must be compiled with GEOPROOF_PROBLEMS_DIR"
#endif

namespace testsupport {

inline std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline geoproof::Problem load_problem(const std::string& name) {
    auto text = read_file_or_die(std::string(GEOPROOF_PROBLEMS_DIR) + "/" + name);
    geoproof::ParsedProblem p = geoproof::parse_problem(text);
    if (!p.ok()) {
        std::string msg = "fixture " + name + " failed to parse:";
        for (const auto& d : p.diagnostics) msg += "\n  " + geoproof::format_diagnostic(d);
        throw std::runtime_error(msg);
    }
    return *p.problem;
}

}  // namespace testsupport
