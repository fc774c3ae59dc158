//! Test corpus of constructions, all of order at most 2000.

pub const CORPUS: &[&str] = &[
    "(cyclic 1)",
    "(cyclic 2)",
    "(cyclic 6)",
    "(cyclic 12)",
    "(cyclic 30)",
    "(dihedral 3)",
    "(dihedral 4)",
    "(dihedral 5)",
    "(dihedral 6)",
    "(dihedral 7)",
    "(dihedral 9)",
    "(dihedral 15)",
    "(sym 3)",
    "(sym 4)",
    "(alt 4)",
    "(gens 8 (((0 2 1 3) (4 7 5 6)) ((0 4 1 5) (2 6 3 7))))",
    "(gens 5 ((0 1 2 3 4) (1 2 4 3)))",
    "(gens 7 ((0 1 2 3 4 5 6) ((1 2 4) (3 6 5))))",
    "(semidirect (gens 4 (((0 1) (2 3)) ((0 2) (1 3)))) ((0 1 2)))",
    "(subgroup (sym 6) ((0 1 2) (3 4 5) ((0 3) (1 4) (2 5))))",
    "(direct (cyclic 2) (sym 3))",
    "(direct (sym 3) (sym 3))",
    "(direct (alt 4) (cyclic 3))",
    "(direct (dihedral 4) (cyclic 3))",
    "(direct (sym 4) (cyclic 2))",
    "(wreath (sym 2) 2)",
    "(wreath (cyclic 3) 2)",
    "(wreath (cyclic 5) 2)",
    "(wreath (sym 3) 2)",
    "(wreath (sym 2) 3)",
    "(wreath (cyclic 3) 3)",
    "(wreath (dihedral 4) 2)",
    "(wreath (alt 4) 2)",
    "(wreath (cyclic 2) 4)",
    "(wreath (sym 3) 3)",
    "(alt 5)",
    "(sym 5)",
    "(psl2 5)",
    "(psigmal2 4)",
    "(direct (alt 5) (cyclic 2))",
    "(direct (alt 5) (cyclic 3))",
    "(direct (alt 5) (sym 3))",
    "(alt 6)",
    "(sym 6)",
    "(psigmal2 9)",
    "(psl2 7)",
    "(psl2 8)",
    "(psl2 11)",
    "(psl2 13)",
    "(psigmal2 8)",
];
