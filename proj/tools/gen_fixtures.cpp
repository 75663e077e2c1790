#include <filesystem>
#include <iostream>

#include "ffw/fixtures.hpp"

using namespace ffw;

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir / "mutations");
    const std::vector<std::pair<std::string, Bundle>> bundles = {
        {"trivial", trivial_bundle()}, {"z2", lattice_bundle(1)},     {"z4", lattice_bundle(2)},
        {"ising", ising_bundle()},     {"fibonacci", fibonacci_bundle()},
    };
    for (const auto& [name, b] : bundles) {
        save_bundle(b, (dir / (name + ".json")).string());
        std::cout << name << ".json\n";
    }
    for (const auto& m : mutation_fixtures()) {
        save_bundle(m.bundle, (dir / "mutations" / (m.suite + ".json")).string());
        std::cout << "mutations/" << m.suite << ".json (" << m.name << ")\n";
    }
}
