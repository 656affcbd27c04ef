//! Property tests: canonicalization is stable under relabeling and child
//! shuffling, and printing round-trips through the parser.

use proptest::prelude::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use dendro::tree::{enumerate_trees, Tree};

/// Applies a seeded relabeling and child shuffle to a tree literal.
fn scramble(tree: &Tree, seed: u64) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Fresh distinct names in a shuffled order.
    let mut names: Vec<String> = (0..tree.edge_count()).map(|i| format!("n{i}")).collect();
    names.shuffle(&mut rng);
    fn rebuild(
        tree: &Tree,
        edge: dendro::tree::EdgeId,
        names: &[String],
        rng: &mut ChaCha8Rng,
    ) -> String {
        let name = &names[edge.index()];
        match tree.top(edge) {
            None => name.clone(),
            Some(v) => {
                let mut children: Vec<String> = tree
                    .inputs(v)
                    .iter()
                    .map(|&c| rebuild(tree, c, names, rng))
                    .collect();
                children.shuffle(rng);
                format!("{name}({})", children.join(","))
            }
        }
    }
    let literal = rebuild(tree, tree.root(), &names, &mut rng);
    Tree::parse(&literal).expect("scrambled literal parses")
}

proptest! {
    #[test]
    fn canonicalization_is_constant_on_isomorphism_classes(
        index in 0usize..357,
        seed in any::<u64>(),
    ) {
        let corpus = enumerate_trees(4, 3);
        let tree = &corpus[index % corpus.len()];
        let scrambled = scramble(tree, seed);
        prop_assert_eq!(scrambled.canonicalize().key(), tree.canonicalize().key());
        // Idempotence.
        let canonical = scrambled.canonicalize();
        prop_assert_eq!(
            canonical.canonical_tree().canonicalize().key(),
            canonical.key()
        );
    }

    #[test]
    fn print_parse_round_trip(index in 0usize..357, seed in any::<u64>()) {
        let corpus = enumerate_trees(4, 3);
        let tree = scramble(&corpus[index % corpus.len()], seed);
        let reparsed = Tree::parse(&tree.literal()).unwrap();
        prop_assert_eq!(&reparsed, &tree);
    }

    #[test]
    fn relabeling_maps_onto_the_canonical_representative(
        index in 0usize..357,
        seed in any::<u64>(),
    ) {
        let corpus = enumerate_trees(4, 3);
        let tree = scramble(&corpus[index % corpus.len()], seed);
        let key = tree.canonicalize();
        // The recorded relabeling is an isomorphism onto the canonical tree.
        let target = key.canonical_tree();
        let map: Vec<dendro::tree::EdgeId> = tree
            .edges()
            .map(|e| {
                target
                    .edge_by_name(&key.relabel()[tree.edge_name(e)])
                    .unwrap()
            })
            .collect();
        let isos = tree.isomorphisms_to(target);
        prop_assert!(isos.contains(&map));
    }
}
