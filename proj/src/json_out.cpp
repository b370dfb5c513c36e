#include "singscat/json_out.hpp"

#include <cmath>
#include <cstdio>

namespace singscat {

namespace {

void dump_into(const nlohmann::json& j, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (j.type()) {
        case value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
                if (!first) out += ',';
                first = false;
                out += nlohmann::json(it.key()).dump();
                out += ':';
                dump_into(it.value(), out);
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out += ',';
                dump_into(j[i], out);
            }
            out += ']';
            break;
        }
        case value_t::number_float: {
            const double v = j.get<double>();
            // -0 would parse back as the integer 0
            out += !std::isfinite(v) ? "null" : (v == 0.0 ? "0" : format_double(v));
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string canonical_dump(const nlohmann::json& doc) {
    std::string out;
    dump_into(doc, out);
    return out;
}

}  // namespace singscat
