#include "artifacts.hpp"

#include <algorithm>
#include <fstream>

#include "run_config.hpp"
#include "samp/errors.hpp"

namespace samptool {

namespace fs = std::filesystem;

ArtifactSink::ArtifactSink(const fs::path& out_dir) : root_(out_dir) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw samp::InputError("cannot create output directory " + root_.string());
}

fs::path ArtifactSink::path(const std::string& rel) {
    fs::path full = root_ / rel;
    if (full.has_parent_path()) fs::create_directories(full.parent_path());
    artifacts_.push_back(rel);
    return full;
}

void ArtifactSink::write_manifest(const std::string& command,
                                  const nlohmann::json& config) {
    // sorted so the listing does not depend on write order (worker pools)
    std::sort(artifacts_.begin(), artifacts_.end());
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["config_hash"] = config_hash(config);
    manifest["artifacts"] = artifacts_;

    std::ofstream os(root_ / "manifest.json");
    if (!os) throw samp::InputError("cannot write " + (root_ / "manifest.json").string());
    os << manifest.dump(2) << "\n";
}

}  // namespace samptool
