#pragma once

#include <cctype>
#include <string>

#include "spiegel/tower.hpp"

namespace spiegel::test {

inline TowerPtr tower(unsigned q, const std::string& P) {
    const FieldPtr k = FiniteField::from_desc(standard_field(q));
    return Tower::build(q, parse_poly(*k, P));
}

/// gtest parameter name "q2_T_3_T_1" for configs with fields q and P.
struct ConfigName {
    template <class Info>
    std::string operator()(const Info& info) const {
        std::string s = "q" + std::to_string(info.param.q) + "_";
        for (const char* c = info.param.P; *c; ++c)
            if (std::isalnum(static_cast<unsigned char>(*c))) s += *c;
            else if (s.back() != '_') s += '_';
        return s;
    }
};

}  // namespace spiegel::test
