/*
 * Copyright 2026 The Treelab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "treelab/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treelab/error.hpp"

namespace treelab {
namespace {

using Json = nlohmann::ordered_json;

Json params_to_json(const Hyperparams& p) {
  Json j;
  j["n_estimators"] = p.n_estimators;
  j["max_depth"] = p.max_depth;
  j["min_samples_leaf"] = p.min_samples_leaf;
  j["max_features"] = p.max_features;
  j["learning_rate"] = p.learning_rate;
  j["subsample_rows"] = p.subsample_rows;
  j["lambda_l2"] = p.lambda_l2;
  j["gamma"] = p.gamma;
  j["histogram_bins"] = p.histogram_bins;
  j["seed"] = p.seed;
  return j;
}

Hyperparams params_from_json(const nlohmann::json& j) {
  Hyperparams p;
  p.n_estimators = j.at("n_estimators").get<std::size_t>();
  p.max_depth = j.at("max_depth").get<std::size_t>();
  p.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
  p.max_features = j.at("max_features").get<std::size_t>();
  p.learning_rate = j.at("learning_rate").get<double>();
  p.subsample_rows = j.at("subsample_rows").get<double>();
  p.lambda_l2 = j.at("lambda_l2").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.histogram_bins = j.at("histogram_bins").get<std::size_t>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

Json trees_to_json(const std::vector<Tree>& trees) {
  Json out = Json::array();
  for (const Tree& tree : trees) {
    Json nodes = Json::array();
    for (const TreeNode& n : tree.nodes) {
      nodes.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"value", n.value},
                       {"cover", n.cover},
                       {"gain", n.gain}});
    }
    out.push_back({{"nodes", std::move(nodes)}});
  }
  return out;
}

std::vector<Tree> trees_from_json(const nlohmann::json& j) {
  std::vector<Tree> trees;
  for (const auto& tj : j) {
    Tree tree;
    for (const auto& nj : tj.at("nodes")) {
      TreeNode n;
      n.feature = nj.at("feature").get<int>();
      n.threshold = nj.at("threshold").get<double>();
      n.left = nj.at("left").get<int>();
      n.right = nj.at("right").get<int>();
      n.value = nj.at("value").get<double>();
      n.cover = nj.at("cover").get<double>();
      n.gain = nj.at("gain").get<double>();
      tree.nodes.push_back(n);
    }
    trees.push_back(std::move(tree));
  }
  return trees;
}

Json model_to_json_value(const Model& model, const std::string& fingerprint) {
  Json j;
  j["format_version"] = 1;
  j["kind"] = model_kind_name(model_kind(model));
  if (const auto* tree = std::get_if<TreeModel>(&model)) {
    j["params"] = params_to_json(tree->params);
    j["feature_names"] = tree->feature_names;
    j["trees"] = trees_to_json({tree->tree});
  } else if (const auto* forest = std::get_if<ForestModel>(&model)) {
    j["params"] = params_to_json(forest->params);
    j["feature_names"] = forest->feature_names;
    j["bootstrap"] = forest->bootstrap;
    j["max_features_used"] = forest->max_features;
    j["trees"] = trees_to_json(forest->trees);
  } else {
    const auto& boosted = std::get<BoostedModel>(model);
    j["params"] = params_to_json(boosted.params);
    j["feature_names"] = boosted.feature_names;
    j["base_score"] = boosted.base_score;
    j["learning_rate"] = boosted.learning_rate;
    j["lambda_l2"] = boosted.lambda_l2;
    j["gamma"] = boosted.gamma;
    j["trees"] = trees_to_json(boosted.trees);
  }
  if (!fingerprint.empty()) j["train_fingerprint"] = fingerprint;
  return j;
}

Model model_from_json_value(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != 1) {
    throw Error(Errc::io_error, "unsupported model format version");
  }
  const ModelKind kind = model_kind_from_name(j.at("kind").get<std::string>());
  auto params = params_from_json(j.at("params"));
  auto names = j.at("feature_names").get<std::vector<std::string>>();
  auto trees = trees_from_json(j.at("trees"));

  switch (kind) {
    case ModelKind::cart: {
      if (trees.size() != 1) {
        throw Error(Errc::io_error, "cart model must hold exactly one tree");
      }
      return TreeModel{std::move(trees.front()), std::move(names), params};
    }
    case ModelKind::random_forest:
    case ModelKind::extra_trees: {
      ForestModel m;
      m.trees = std::move(trees);
      m.kind = kind == ModelKind::random_forest ? ForestKind::random_forest
                                                : ForestKind::extra_trees;
      m.bootstrap = j.value("bootstrap", kind == ModelKind::random_forest);
      m.max_features = j.value("max_features_used", std::size_t{0});
      m.feature_names = std::move(names);
      m.params = params;
      return m;
    }
    case ModelKind::boosted: {
      BoostedModel m;
      m.trees = std::move(trees);
      m.base_score = j.at("base_score").get<double>();
      m.learning_rate = j.at("learning_rate").get<double>();
      m.lambda_l2 = j.at("lambda_l2").get<double>();
      m.gamma = j.at("gamma").get<double>();
      m.feature_names = std::move(names);
      m.params = params;
      return m;
    }
  }
  throw Error(Errc::io_error, "invalid model kind");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << text;
}

}  // namespace

std::string model_to_json(const Model& model,
                          const std::string& train_fingerprint) {
  return model_to_json_value(model, train_fingerprint).dump();
}

Model model_from_json(const std::string& text) {
  return model_from_json_value(nlohmann::json::parse(text));
}

void save_model(const Model& model, const std::string& path,
                const std::string& train_fingerprint) {
  write_file(path, model_to_json(model, train_fingerprint) + "\n");
}

Model load_model(const std::string& path) {
  return model_from_json(read_file(path));
}

std::string ensemble_to_json(const EnsembleModel& model,
                             const std::string& train_fingerprint) {
  Json j;
  j["format_version"] = 1;
  j["kind"] = "ensemble";
  j["strategy"] = ensemble_strategy_name(model.strategy);
  if (!model.weights.empty()) j["weights"] = model.weights;
  if (model.oof_folds > 0) j["oof_folds"] = model.oof_folds;
  Json members = Json::array();
  for (std::size_t m = 0; m < model.members.size(); ++m) {
    members.push_back({{"name", model.member_names[m]},
                       {"model", model_to_json_value(model.members[m], "")}});
  }
  j["members"] = std::move(members);
  if (model.meta_learner) {
    j["meta_learner"] = model_to_json_value(Model{*model.meta_learner}, "");
  }
  if (!train_fingerprint.empty()) j["train_fingerprint"] = train_fingerprint;
  return j.dump();
}

EnsembleModel ensemble_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("kind").get<std::string>() != "ensemble") {
    throw Error(Errc::io_error, "not an ensemble bundle");
  }
  EnsembleModel model;
  model.strategy =
      ensemble_strategy_from_name(j.at("strategy").get<std::string>());
  if (j.contains("weights")) {
    model.weights = j["weights"].get<std::vector<double>>();
  }
  model.oof_folds = j.value("oof_folds", std::size_t{0});
  for (const auto& member : j.at("members")) {
    model.member_names.push_back(member.at("name").get<std::string>());
    model.members.push_back(model_from_json_value(member.at("model")));
  }
  if (j.contains("meta_learner")) {
    model.meta_learner =
        std::get<BoostedModel>(model_from_json_value(j["meta_learner"]));
  }
  return model;
}

void save_ensemble(const EnsembleModel& model, const std::string& path,
                   const std::string& train_fingerprint) {
  write_file(path, ensemble_to_json(model, train_fingerprint) + "\n");
}

EnsembleModel load_ensemble(const std::string& path) {
  return ensemble_from_json(read_file(path));
}

bool is_ensemble_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return j.value("kind", std::string{}) == "ensemble";
}

std::string saved_fingerprint(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return j.value("train_fingerprint", std::string{});
}

}  // namespace treelab
