#include "posedict/synthetic_benchmark.hpp"

#include "posedict/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <memory>

namespace posedict {

namespace {

struct Subject {
    ClassId id;
    TexturedCloud head;
    Camera frontal;
};

struct View {
    std::size_t subject;
    Camera camera;
};

Image photograph(const Subject& s, const Camera& cam, KeyedStream& rng,
                 const SyntheticPoseConfig& cfg)
{
    Image img = resize_bilinear(render(s.head, cam), cfg.working);
    const double gain = 1.0 + cfg.gain_jitter * rng.uniform(-1.0, 1.0);
    for (double& v : img.pixels())
        v = std::clamp(v * gain + cfg.noise * rng.normal(), 0.0, 1.0);
    return img;
}

} // namespace

SyntheticPoseData make_synthetic_pose_benchmark(const SyntheticPoseConfig& cfg)
{
    if (cfg.subjects < 2)
        throw ConfigError("synthetic benchmark needs at least two subjects");
    if (cfg.repeats < 1)
        throw ConfigError("synthetic benchmark needs at least one repeat");
    if (cfg.train_yaw.empty())
        throw ConfigError("synthetic benchmark needs at least one training pose");

    auto subjects = std::make_shared<std::vector<Subject>>();
    for (int s = 0; s < cfg.subjects; ++s) {
        TexturedCloud head = synthetic_head(static_cast<std::uint64_t>(s), cfg.seed, cfg.head);
        Camera frontal = Camera::framing(head, cfg.render, cfg.focal);
        subjects->push_back({fmt::format("s{:03d}", s), std::move(head), frontal});
    }

    auto views = std::make_shared<std::map<std::string, View>>();
    SyntheticPoseData data;
    for (int rep = 0; rep < cfg.repeats; ++rep) {
        Split split;
        split.theta = static_cast<int>(cfg.train_yaw.size());
        for (std::size_t s = 0; s < subjects->size(); ++s) {
            const Subject& subj = (*subjects)[s];
            KeyedStream rng(mix_key(mix_key(cfg.seed, static_cast<std::uint64_t>(rep) + 1),
                                    hash_string(subj.id)));
            auto posed = [&](double yaw) {
                const double y = yaw + cfg.pose_jitter * rng.uniform(-1.0, 1.0);
                const double p = cfg.pose_jitter * rng.uniform(-1.0, 1.0);
                return rotated_about(subj.frontal, rotation_ypr(y, p, 0.0), subj.head.centroid());
            };
            for (std::size_t t = 0; t < cfg.train_yaw.size(); ++t) {
                const Camera cam = posed(cfg.train_yaw[t]);
                const std::string id = fmt::format("{}/r{}_train{}", subj.id, rep, t);
                split.train.push_back({vectorize(photograph(subj, cam, rng, cfg), id), subj.id});
                views->emplace(id, View{s, cam});
            }
            for (double sign : {1.0, -1.0}) {
                const Camera cam = posed(sign * cfg.test_yaw);
                const std::string id = fmt::format("{}/r{}_test{}", subj.id, rep, sign > 0 ? "p" : "m");
                split.test.push_back({vectorize(photograph(subj, cam, rng, cfg), id), subj.id});
            }
        }
        data.splits.push_back(std::move(split));
    }

    data.augmenter = [subjects, views, sweep = cfg.sweep, working = cfg.working](
                         std::span<const LabeledSample> train, bool normalize) {
        AuxiliaryOptions opts;
        opts.resolution = working;
        opts.normalize = normalize;
        Dictionary aux;
        for (const auto& sample : train) {
            auto it = views->find(sample.sample.source_id());
            if (it == views->end())
                throw DataError(fmt::format("no synthetic head for training sample '{}'",
                                            sample.sample.source_id()));
            const std::vector<std::pair<TexturedCloud, ClassId>> cloud{
                {(*subjects)[it->second.subject].head, sample.label}};
            aux = merge_dictionaries(aux, synthesize_auxiliary(cloud, it->second.camera, sweep, opts));
        }
        return aux;
    };
    return data;
}

} // namespace posedict
