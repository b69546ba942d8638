#pragma once

#include <string>
#include <vector>

namespace folsing_tests {

inline std::string linear_form(int n) {
    return "omega: " + std::to_string(n) + "*y dx - x dy";
}

// Polynomial germs whose Seidenberg reduction stays within the engine's
// supported class (rational blowup centers).  Used by the Camacho-Sad and
// pipeline-equality suites.
inline const std::vector<std::string>& corpus() {
    static const std::vector<std::string> germs{
        linear_form(1),
        linear_form(2),
        linear_form(3),
        linear_form(4),
        linear_form(5),
        linear_form(6),
        "omega: x dx + y^2 dy",
        "omega: x dx - y^2 dy",
        "omega: x dx + y^3 dy",
        "omega: x dx + y^4 dy",
        "omega: 3*x^2 dx - 2*y dy",                    // tangent to y^2 = x^3
        "omega: 5*x^4 dx - 2*y dy",                    // tangent to y^2 = x^5
        "omega: 4*x^3 dx - 2*y dy",                    // tangent to y^2 = x^4
        "omega: 4*x^3 dx - 3*y^2 dy",                  // tangent to y^3 = x^4
        "v: (x^2 + 2*x*y) d/dx - (2*x*y + y^2) d/dy",  // levels of x^2 y + x y^2
        "v: x d/dx + (x + 2*y) d/dy",
        "v: x d/dx + (x + 3*y) d/dy",
        "v: (2*x + y^2) d/dx + 3*y d/dy",
        "v: y d/dx + x^2 d/dy",
        "v: (x^2 - y^2) d/dx + 2*x*y d/dy",
        "v: x*y d/dx + (x^3 + y^2) d/dy",
        "omega: (2*x*y + x^3) dx - (x^2 - y) dy",
    };
    return germs;
}

}  // namespace folsing_tests
