// Regenerates the shipped catalog directory.
#include <filesystem>
#include <iostream>

#include "nilwkb/io/catalog_files.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: nilwkb_gen_catalog <catalog-dir>\n";
        return 1;
    }
    std::filesystem::path root(argv[1]);
    for (const auto& [rel, doc] : nilwkb::io::catalog_documents()) {
        auto target = root / rel;
        std::filesystem::create_directories(target.parent_path());
        nilwkb::io::write_text_file(target, nilwkb::io::dump(doc));
        std::cout << target.string() << "\n";
    }
    return 0;
}
