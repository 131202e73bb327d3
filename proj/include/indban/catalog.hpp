#pragma once

#include <string>
#include <vector>

namespace indban {

struct CatalogEntry {
    std::string statement;
    std::string scenario; // file name under scenarios/
    std::string check;    // check name inside the scenario
};

const std::vector<CatalogEntry>& catalog();

} // namespace indban
