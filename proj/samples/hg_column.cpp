// Print the first coefficients of H_g for one class and decompose the
// q^{7/8} row over the M24 characters.
#include <iostream>
#include <string>

#include "m24rad/m24rad.hpp"

using namespace m24rad;

int main(int argc, char** argv) {
    std::string name = argc > 1 ? argv[1] : "2A";
    const ClassRecord& c = class_data(name);
    PSeries h = hg_series(c, Rat(6));
    std::cout << "H_" << c.name << " =";
    for (auto& [num, coeff] : h.terms()) std::cout << " + (" << coeff << ") q^" << h.exponent_of(num);
    std::cout << " + ...\n";

    auto table = series_table(SeriesKind::hg, 2);
    auto dec = decompose_table(table);
    const auto& names = character_table().names;
    std::cout << "q^{7/8} row:";
    for (std::size_t i = 0; i < names.size(); ++i)
        if (dec[1].multiplicity[i] != 0) std::cout << " " << dec[1].multiplicity[i] << " " << names[i];
    std::cout << "\n";
}
