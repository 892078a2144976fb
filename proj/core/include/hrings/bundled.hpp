#pragma once

#include <string>
#include <vector>

namespace hrings {

struct BundledExample {
    std::string name;
    std::string text;       // .htri payload
    bool reconstructed;     // true if the data was rebuilt from constraints
};

const std::vector<BundledExample>& bundled_examples();
const BundledExample& bundled(const std::string& name);

}  // namespace hrings
