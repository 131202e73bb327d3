#include "indban/catalog.hpp"

namespace indban {

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"contracting product universal property", "contracting_products.toml", "product_assembly"},
        {"contracting coproduct universal property", "contracting_products.toml", "coproduct_assembly"},
        {"random contracting (co)product families", "contracting_products.toml", "random_families"},
        {"operator norm of diagonal-norm maps", "opnorm_examples.toml", "sum_to_max"},
        {"projective tensor norm of flat spaces", "opnorm_examples.toml", "tensor_sum_sum"},
        {"delta swap does not commute with tensor", "delta_swap.toml", "swap_6"},
        {"contracting colimit collapses the halving chain", "halving_chain.toml", "halving_20"},
        {"group algebra is a contracting bialgebra", "group_z2.toml", "group_bialgebra"},
        {"function algebra dual to the group algebra", "group_z2.toml", "group_function_duality"},
        {"representations are modules over the group algebra", "group_z2.toml", "regular_rep_module"},
        {"free and cofree representation adjunctions", "group_z2.toml", "adjunction"},
        {"group bialgebras for all groups of order at most 8", "groups_order8.toml", "q8_bialgebra"},
        {"grading equivalence", "grading_window.toml", "graded_roundtrip"},
        {"grading is monoidal", "grading_window.toml", "monoidal"},
        {"truncated grading window is not a bialgebra", "grading_window.toml", "window_not_group"},
        {"Tate counit bounded exactly for radius at least 1", "tate_phase.toml", "r_1_2"},
        {"Tate squared-radius comultiplication is contracting", "tate_phase.toml", "r_2"},
        {"overconvergent comultiplication chain", "dagger.toml", "dagger_to_one"},
        {"comparison map phi", "descent_qsqrt2.toml", "descent"},
        {"cogebroid comodules descend (archimedean quadratic)", "descent_qi.toml", "descent"},
        {"cyclotomic descent and norm model", "descent_zeta5.toml", "descent"},
        {"descent for a non-cyclic Galois group", "descent_biquadratic.toml", "descent"},
        {"non-archimedean descent with an isometric phi", "descent_q5.toml", "cubic"},
        {"comultiplication order for a non-abelian Galois group", "descent_s3.toml", "s3"},
        {"Iwasawa duality on a finite tower", "iwasawa_tower.toml", "tower"},
        {"locally constant approximation", "iwasawa_tower.toml", "squares"},
    };
    return entries;
}

} // namespace indban
