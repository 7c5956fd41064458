use nqv_core::mckay::{build_mckay, projective_mckay, verify_correspondence, GroupSpec, McKayData};
use nqv_core::rootsys::{DynkinType, RootSystem};
use num_complex::Complex64;

fn specs() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (2..=7).map(GroupSpec::Cyclic).collect();
    v.extend((2..=5).map(GroupSpec::BinaryDihedral));
    v.extend([GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral]);
    v
}

/// Row orthogonality `⟨χ_i, χ_j⟩ = δ_ij` and column orthogonality
/// `Σ_i χ_i(g) conj χ_i(h) = δ_gh |C_G(g)|`, checked directly on the table.
fn check_orthogonality(d: &McKayData) {
    let sizes: Vec<f64> = d.conjugacy_classes.iter().map(|c| c.len() as f64).collect();
    let order = d.order() as f64;
    let r = d.vertex_count();
    assert_eq!(d.conjugacy_classes.len(), r, "square character table");
    for i in 0..r {
        for j in 0..r {
            let s: Complex64 =
                (0..r).map(|k| d.characters[k][i] * d.characters[k][j].conj() * sizes[k]).sum::<Complex64>() / order;
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((s - expect).norm() < 1e-8, "{} rows {i},{j}: {s}", d.spec);
        }
    }
    for g in 0..r {
        for h in 0..r {
            let s: Complex64 = (0..r).map(|i| d.characters[g][i] * d.characters[h][i].conj()).sum();
            let expect = if g == h { order / sizes[g] } else { 0.0 };
            assert!((s - expect).norm() < 1e-8, "{} cols {g},{h}", d.spec);
        }
    }
}

#[test]
fn every_group_matches_its_diagram() {
    for spec in specs() {
        let d = build_mckay(spec).unwrap();
        assert_eq!(d.order(), spec.order(), "{spec}");
        assert_eq!(d.irrep_dims.iter().map(|x| x * x).sum::<usize>(), spec.order());
        assert_eq!(d.irrep_dims[0], 1);
        for i in 0..d.vertex_count() {
            assert_eq!(d.adjacency[i][i], 0);
            for j in 0..d.vertex_count() {
                assert_eq!(d.adjacency[i][j], d.adjacency[j][i]);
            }
        }
        check_orthogonality(&d);
        let rs = RootSystem::build(spec.dynkin()).unwrap();
        let report = verify_correspondence(&d, &rs).unwrap();
        assert!(report.all_pass(), "{spec}: {report:?}");
        assert_eq!(report.matching[0], 0);
    }
}

#[test]
fn icosahedral_counts() {
    let d = build_mckay(GroupSpec::BinaryIcosahedral).unwrap();
    assert_eq!(d.order(), 120);
    assert_eq!(d.vertex_count(), 9);
    let mut dims = d.irrep_dims.clone();
    dims.sort();
    assert_eq!(dims, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
}

#[test]
fn closure_spot_check() {
    let d = build_mckay(GroupSpec::BinaryOctahedral).unwrap();
    let mul = |a: &[Complex64; 4], b: &[Complex64; 4]| {
        [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
    };
    for (i, a) in d.elements.iter().enumerate().step_by(7) {
        for b in d.elements.iter().skip(i % 5).step_by(5) {
            let p = mul(a, b);
            assert!(d.elements.iter().any(|e| e.iter().zip(&p).all(|(x, y)| (x - y).norm() < 1e-9)));
        }
    }
}

#[test]
fn minus_one_predicate_matches_group() {
    // -1 ∈ Γ exactly when projective_mckay returns Some
    for spec in specs() {
        let d = build_mckay(spec).unwrap();
        let has_minus_one = d.elements.iter().any(|e| {
            (e[0] + 1.0).norm() < 1e-9 && e[1].norm() < 1e-9 && e[2].norm() < 1e-9 && (e[3] + 1.0).norm() < 1e-9
        });
        assert_eq!(projective_mckay(spec.dynkin()).is_some(), has_minus_one, "{spec}");
    }
    assert_eq!(projective_mckay(DynkinType::d(6)), Some([0, 4].into()));
}
