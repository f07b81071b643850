#pragma once

#include <string>
#include <vector>

#include "modent/chain.hpp"

namespace modent::cli {

/// A curve of a multi-curve figure: base pattern plus how far to take N.
struct Curve {
    ModularPattern base;
    int max_moduli = 20;
};

struct Figure {
    std::string name;
    std::string description;
    /// Parameter choices the source figure does not state explicitly.
    std::vector<std::string> assumptions;
};

const std::vector<Figure>& figures();
const Figure& figure(const std::string& name);

/// Full CSV for a named figure, with `comments` written first as "# " lines.
std::string figure_csv(const std::string& name, unsigned threads, const std::vector<std::string>& comments);

}  // namespace modent::cli
