#pragma once

#include "wpi/gmod.hpp"

#include <string>

namespace wpi {

/**
 * Embedding config: { "rank": N, "images": [[gauss, gauss], ...] } with
 * scalars in the text grammar of parse_gauss. The images list must have
 * exactly `rank` pairs and rank must be at least 2. Errors throw
 * std::runtime_error with a "config:" prefix.
 */
EmbeddingRef parse_embedding_json(const std::string& text);
EmbeddingRef load_embedding(const std::string& path);

/**
 * Module config: { "kind": "sgamma"|"mn", "n"?: int, "beta": [gauss, gauss] }
 * bound to the given embedding. "mn" requires a nonnegative "n"; "sgamma"
 * must not carry one.
 */
GradedModuleSpec parse_module_spec_json(const std::string& text, EmbeddingRef e);
GradedModuleSpec load_module_spec(const std::string& path, EmbeddingRef e);

}  // namespace wpi
