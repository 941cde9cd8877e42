#include <fstream>
#include <functional>
#include <thread>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "singmod/quadarith.hpp"

namespace singmod::quad {

std::string class_group_to_json(const ClassGroup& G) {
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& q : G.forms()) forms.push_back({q.a, q.b, q.c});
  nlohmann::json j{{"D", G.disc().value()}, {"h", G.h()}, {"forms", forms}};
  return j.dump(1);
}

ClassGroup class_group_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto D = Discriminant::fundamental(j.at("D").get<std::int64_t>());
  if (j.at("h").get<int>() != D.class_number()) throw std::invalid_argument("cached h does not match discriminant");
  std::vector<BinaryQF> forms;
  for (const auto& f : j.at("forms")) {
    if (!f.is_array() || f.size() != 3) throw std::invalid_argument("cached form must be [a,b,c]");
    forms.push_back({f[0].get<std::int64_t>(), f[1].get<std::int64_t>(), f[2].get<std::int64_t>()});
  }
  return ClassGroup(D, std::move(forms));
}

std::shared_ptr<const ClassGroup> ClassGroupCache::get(std::int64_t D) {
  {
    std::shared_lock lock(mu_);
    if (auto it = groups_.find(D); it != groups_.end()) return it->second;
  }
  std::optional<std::filesystem::path> dir;
  {
    std::shared_lock lock(mu_);
    dir = dir_;
  }
  std::shared_ptr<const ClassGroup> group;
  std::filesystem::path file;
  if (dir) {
    file = *dir / ("clgroup_" + std::to_string(-D) + ".json");
    if (std::ifstream in(file); in) {
      std::stringstream ss;
      ss << in.rdbuf();
      group = std::make_shared<const ClassGroup>(class_group_from_json(ss.str()));
      if (group->disc().value() != D) throw std::runtime_error("cache file " + file.string() + " holds another discriminant");
    }
  }
  if (!group) {
    group = std::make_shared<const ClassGroup>(Discriminant::fundamental(D));
    if (dir) {
      // The cache is an optimization; an unwritable directory only costs recomputation.
      std::error_code ec;
      std::filesystem::create_directories(*dir, ec);
      auto tmp = file;
      tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
      {
        std::ofstream out(tmp);
        if (out) out << class_group_to_json(*group) << '\n';
      }
      std::filesystem::rename(tmp, file, ec);
      if (ec) std::filesystem::remove(tmp, ec);
    }
  }
  std::unique_lock lock(mu_);
  return groups_.emplace(D, group).first->second;
}

void ClassGroupCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::unique_lock lock(mu_);
  dir_ = std::move(dir);
}

ClassGroupCache& ClassGroupCache::global() {
  static ClassGroupCache cache;
  return cache;
}

}  // namespace singmod::quad
