// Standalone acceptance gate: runs every criterion with its pinned
// budget, prints one line per criterion, exits nonzero on any failure.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sks/accept.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::string seed_s = "0x5eedfacedc0ffee";
    long trials = 0;
    std::vector<std::string> only_s;
    app.add_option("--seed", seed_s, "master seed (decimal or 0x hex)");
    app.add_option("--trials", trials, "trial override, 0 keeps the pinned defaults");
    app.add_option("--only", only_s, "criterion ids or names to run");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    uint64_t seed = std::stoull(seed_s, nullptr, 0);
    std::vector<int> only;
    for (const auto& s : only_s) {
        bool found = false;
        for (int id = 1; id <= sks::acceptance_count(); ++id) {
            if (s == std::to_string(id) || s == sks::acceptance_name(id)) {
                only.push_back(id);
                found = true;
                break;
            }
        }
        if (!found) {
            std::fprintf(stderr, "unknown criterion '%s'\n", s.c_str());
            return 2;
        }
    }

    if (only.empty())
        for (int id = 1; id <= sks::acceptance_count(); ++id) only.push_back(id);

    int failed = 0;
    for (int id : only) {
        sks::CriterionResult r = sks::run_criterion(id, seed, trials);
        std::printf("%s\n", sks::format_criterion(r).c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu criteria pass\n", only.size() - (size_t)failed, only.size());
    return failed == 0 ? 0 : 1;
}
