#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "acdc/matpower.hpp"
#include "acdc/types.hpp"
#include "acdc/vsc_json.hpp"

namespace acdc::test {

inline std::string data_path(const std::string& name) {
    return std::string(ACDC_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline NetworkCase load_case(const std::string& name) {
    return parse_matpower_case(read_file(data_path(name)));
}

inline MtdcSystem load_overlay(const std::string& name) {
    return parse_vsc_extension(read_file(data_path(name)));
}

/// Deterministic uniform double in [lo, hi).
class Rng {
public:
    explicit Rng(unsigned seed) : engine_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * dist_(engine_);
    }

private:
    std::mt19937 engine_;
    std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

}  // namespace acdc::test
