#include <doctest.h>

#include <cmath>

#include "cavmerge/datasets.hpp"
#include "cavmerge/evaluation.hpp"
#include "cavmerge/model_select.hpp"

using namespace cavmerge;

TEST_CASE("default_k_max") {
    CHECK(default_k_max(10000) == 100);
    CHECK(default_k_max(400) == 30);
    CHECK(default_k_max(25) == 25);
    CHECK(default_k_max(1) == 1);
    CHECK(default_k_max(900) == 30);
    CHECK(default_k_max(901) == 30);
    CHECK(default_k_max(961) == 31);
}

TEST_CASE("jump selection on seven well-separated blobs") {
    std::vector<std::vector<double>> centers;
    for (int i = 0; i < 7; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / 7.0;
        const double radius = 10.0 / (2.0 * std::sin(std::numbers::pi / 7.0));
        centers.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
    const auto ds = gen_gaussian_blobs(100, centers, 1.0, 71);
    const auto profile = jump_select(ds.data, 30, 10, 2024);

    CHECK(profile.selected_k >= 7);
    CHECK(profile.power == doctest::Approx(1.0));  // p/2 with p = 2

    // the K = 7 fit recovers the generated classes exactly
    const auto at7 = multi_start_fit(ds.data, 7, 10, sub_seed(2024, 7));
    CHECK(adjusted_rand_index(at7.labeling.labels, ds.true_labels.labels) ==
          doctest::Approx(1.0));

    // selected_k maximizes the jump vector
    for (double j : profile.jumps) CHECK(j <= profile.jumps[profile.selected_k - 1]);

    // profile reproduces bit for bit with the same seed
    const auto again = jump_select(ds.data, 30, 10, 2024);
    CHECK(again.selected_k == profile.selected_k);
    CHECK(again.distortions == profile.distortions);
    CHECK(again.jumps == profile.jumps);
}

TEST_CASE("distortions shrink with K on a single Gaussian") {
    const auto ds = gen_gaussian_blobs(300, {{0.0, 0.0}}, 1.0, 5);
    const auto profile = jump_select(ds.data, 10, 10, 99);
    for (std::size_t i = 1; i < profile.distortions.size(); ++i)
        CHECK(profile.distortions[i] <= profile.distortions[i - 1] + 1e-9);
    CHECK(profile.jumps[0] == std::pow(profile.distortions[0], -profile.power));
}

TEST_CASE("stored distortion equals wcss/(n p) of the per-K refit") {
    const auto ds = gen_gaussian_blobs(60, {{0, 0}, {8, 8}}, 1.0, 43);
    const auto profile = jump_select(ds.data, 6, 5, 31);
    const double denom = static_cast<double>(ds.data.rows()) * ds.data.cols();
    for (int k = 1; k <= profile.k_max; ++k) {
        const auto refit = multi_start_fit(ds.data, k, 5,
                                           sub_seed(31, static_cast<std::uint64_t>(k)));
        CHECK(profile.distortions[static_cast<std::size_t>(k) - 1] ==
              doctest::Approx(refit.wcss / denom).epsilon(1e-12));
    }
}

TEST_CASE("zero distortion stops the scan and is selected") {
    // four points, two distinct locations: K = 2 already fits perfectly
    const DataMatrix data(4, 2, {0, 0, 0, 0, 5, 5, 5, 5});
    const auto profile = jump_select(data, 4, 3, 17);
    CHECK(profile.selected_k == 2);
    CHECK(profile.k_max == 2);
    CHECK(profile.distortions.back() == 0.0);
    CHECK(profile.selected_model.wcss == 0.0);
}

TEST_CASE("jump_select validates k_max") {
    const DataMatrix data(3, 1, {1, 2, 3});
    CHECK_THROWS_AS(jump_select(data, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(jump_select(data, 4, 1, 1), std::invalid_argument);
}
