#pragma once

#include <filesystem>
#include <string>

#include "ssl/surface.hpp"

namespace ssl {

// {"faces": [{"sides": [l01, l12, l20]}, ...],
//  "pairings": [[[f, s], [f2, s2]], [[f, s], [f2, s2], true], ...]}
// A third `true` element marks a flipped (start-to-start) gluing.
std::string surface_to_json(const MetricSurface& s);
MetricSurface surface_from_json(const std::string& text);

void write_surface(const MetricSurface& s, const std::filesystem::path& path);
MetricSurface read_surface(const std::filesystem::path& path);

}  // namespace ssl
