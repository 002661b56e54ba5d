#pragma once

#include <string>
#include <utility>
#include <vector>

#include "map_zoo.hpp"

// Shared acceptance battery: certified tuples covering every map kind and
// every tuple size from one to four, with geometries ranging from nearly
// touching to widely separated.

struct BatteryEntry {
    std::string name;
    grz::Rigging rigging;
};

inline std::vector<BatteryEntry> acceptance_battery() {
    using grz::Cd;
    std::vector<BatteryEntry> battery;
    auto add = [&battery](std::string name, std::vector<grz::ConformalMap> maps) {
        battery.push_back({std::move(name), grz::validate_rigging(std::move(maps))});
    };

    add("n1_quadratic", {grz::quadratic_map(Cd(0.0), 0.2)});
    add("n1_joukowski", {grz::joukowski_ellipse(Cd(0.5, 0.5), 0.3)});
    add("affine_pair", {grz::affine_disk(Cd(0.0), 1.0), grz::affine_disk(Cd(3.0), 1.0)});
    add("quad_affine_pair", {grz::quadratic_map(Cd(0.0), 0.2), grz::affine_disk(Cd(4.0), 1.0)});
    add("jouk_quad_pair", {grz::joukowski_ellipse(Cd(0.0), 0.3),
                           grz::quadratic_map(Cd(0.0, 4.0), 0.15)});
    add("far_pair", {grz::affine_disk(Cd(0.0), 1.0), grz::affine_disk(Cd(10.0), 1.0)});
    add("raw_cubic_pair", {grz::raw_series_map(Cd(0.0), grz::Series({Cd(0.0), Cd(1.0), Cd(0.0),
                                                                     Cd(0.1)}),
                                               true),
                           grz::affine_disk(Cd(4.0), 1.0)});
    add("affine_triple", {grz::affine_disk(Cd(0.0), 0.3), grz::affine_disk(Cd(1.0), 0.3),
                          grz::affine_disk(Cd(-1.0), 0.3)});
    add("mixed_triple", {grz::quadratic_map(Cd(0.0), 0.15), grz::affine_disk(Cd(3.5), 1.0),
                         grz::joukowski_ellipse(Cd(-3.5), 0.2)});
    add("affine_quad", {grz::affine_disk(Cd(0.0), 0.4), grz::affine_disk(Cd(2.5), 0.4),
                        grz::affine_disk(Cd(-2.5), 0.4), grz::affine_disk(Cd(0.0, 2.5), 0.4)});
    add("mixed_quad", {grz::quadratic_map(Cd(0.0), 0.1), grz::affine_disk(Cd(3.0), 0.5),
                       grz::affine_disk(Cd(-3.0), 0.5),
                       grz::joukowski_ellipse(Cd(0.0, 3.0), 0.25)});
    return battery;
}
