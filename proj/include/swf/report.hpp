#pragma once

#include "swf/rational.hpp"

#include <string>
#include <vector>

namespace swf {

struct Violation {
    std::string constraint;
    std::vector<std::string> witness;
    Rational residual;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(Violation v)
    {
        ok = false;
        violations.push_back(std::move(v));
    }
};

inline bool operator==(const Violation& a, const Violation& b)
{
    return a.constraint == b.constraint && a.witness == b.witness && a.residual == b.residual;
}

inline bool operator==(const ValidationReport& a, const ValidationReport& b)
{
    return a.ok == b.ok && a.violations == b.violations;
}

}  // namespace swf
