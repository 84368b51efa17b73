#ifndef DELTADEP_TESTS_GOLDEN_HPP
#define DELTADEP_TESTS_GOLDEN_HPP

// Golden CLI fixtures: NAME.args holds one argument per line (`@GOLDEN@`
// expands to the fixture directory), NAME.out the exact expected stdout and
// the optional NAME.code the expected exit status (default 0).

#include <deltadep/cli.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace golden {

struct Fixture {
    std::string name;
    std::vector<std::string> args;
    std::string expected_out;
    int expected_code = 0;
};

struct Outcome {
    std::string out;
    std::string err;
    int code = 0;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<Fixture> load(const std::filesystem::path& dir) {
    std::vector<Fixture> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".args") continue;
        Fixture f;
        f.name = entry.path().stem().string();
        std::istringstream lines(slurp(entry.path()));
        for (std::string line; std::getline(lines, line);) {
            for (auto pos = line.find("@GOLDEN@"); pos != std::string::npos; pos = line.find("@GOLDEN@"))
                line.replace(pos, 8, dir.string());
            f.args.push_back(line);
        }
        auto base = entry.path();
        f.expected_out = slurp(base.replace_extension(".out"));
        if (auto code = base.replace_extension(".code"); std::filesystem::exists(code))
            f.expected_code = std::stoi(slurp(code));
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
    return out;
}

inline Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = deltadep::cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

}  // namespace golden

#endif  // DELTADEP_TESTS_GOLDEN_HPP
