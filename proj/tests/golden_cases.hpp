#pragma once

// CLI invocations whose output is frozen under tests/golden/<name>.out.

#include <string>
#include <vector>

struct GoldenCase {
    const char* name;
    std::vector<std::string> args;
    int code;
};

inline const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> g = {
        {"junction_resonant", {"junction", "--m", "2", "--c", "-9.869604401089358"}, 0},
        {"junction_undefined", {"junction", "--m", "1.5", "--c", "-1"}, 3},
        {"scatter_delta", {"scatter", "--m", "1", "--c", "-1", "--k", "1"}, 0},
        {"scatter_sweep_csv", {"scatter", "--m", "1", "--c", "-2", "--kmin", "0.5", "--kmax", "2", "--ksteps", "4"}, 0},
        {"scatter_sweep_json",
         {"--format", "json", "scatter", "--m", "1", "--c", "-2", "--kmin", "1e-3", "--kmax", "1e3", "--ksteps", "5",
          "--kscale", "log"},
         0},
        {"bound_delta", {"bound", "--m", "1", "--c", "-2"}, 0},
        {"radial_shell", {"radial", "--m", "1", "--c", "-2", "--a", "1", "--k", "1"}, 0},
        {"radial_free_sweep", {"radial", "--m", "0.5", "--c", "3", "--a", "1", "--kmin", "1", "--kmax", "4", "--ksteps", "4"}, 0},
        {"mollify_tophat", {"mollify", "--m", "1", "--c", "-1", "--shape", "tophat", "--eps", "1e-1,1e-2,1e-3", "--k", "1"}, 0},
        {"resonance_tophat", {"resonance", "--shape", "tophat", "--n", "2"}, 0},
    };
    return g;
}

