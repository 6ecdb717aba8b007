#include "wpi/config.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wpi {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("config: malformed JSON");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GaussianRational scalar_field(const json& j, const char* where) {
  if (!j.is_string()) throw std::runtime_error(std::string("config: ") + where + " must be a scalar string");
  try {
    return parse_gauss(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("config: ") + where + ": " + e.what());
  }
}

CVec2 vec_field(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error(std::string("config: ") + where + " must be a pair of scalars");
  return CVec2(scalar_field(j[0], where), scalar_field(j[1], where));
}

}  // namespace

EmbeddingRef parse_embedding_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("rank") || !j.contains("images"))
    throw std::runtime_error("config: embedding needs \"rank\" and \"images\"");
  if (!j["rank"].is_number_integer()) throw std::runtime_error("config: rank must be an integer");
  const long n = j["rank"].get<long>();
  if (n < 2) throw std::runtime_error("config: rank must be at least 2");
  const json& images = j["images"];
  if (!images.is_array() || long(images.size()) != n)
    throw std::runtime_error("config: images must list one pair per generator");
  std::vector<CVec2> v;
  v.reserve(images.size());
  for (const json& im : images) v.push_back(vec_field(im, "image"));
  return std::make_shared<LatticeEmbedding>(std::move(v));
}

EmbeddingRef load_embedding(const std::string& path) {
  return parse_embedding_json(slurp(path));
}

GradedModuleSpec parse_module_spec_json(const std::string& text, EmbeddingRef e) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("kind") || !j.contains("beta"))
    throw std::runtime_error("config: module needs \"kind\" and \"beta\"");
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  const Coset g{vec_field(j["beta"], "beta"), std::move(e)};
  if (kind == "sgamma") {
    if (j.contains("n")) throw std::runtime_error("config: sgamma does not take \"n\"");
    return GradedModuleSpec::sgamma(g);
  }
  if (kind == "mn") {
    if (!j.contains("n") || !j["n"].is_number_integer())
      throw std::runtime_error("config: mn needs an integer \"n\"");
    const long n = j["n"].get<long>();
    if (n < 0) throw std::runtime_error("config: n must be nonnegative");
    return GradedModuleSpec::mn(g, n);
  }
  throw std::runtime_error("config: kind must be \"sgamma\" or \"mn\"");
}

GradedModuleSpec load_module_spec(const std::string& path, EmbeddingRef e) {
  return parse_module_spec_json(slurp(path), std::move(e));
}

}  // namespace wpi
