mod common;

use common::{rng, small_rational, symplectic_matrix, tensor, vector};
use fedosov_core::chart::{self, Chart, Connection};
use fedosov_core::linalg::{self, Matrix};
use fedosov_core::model::{
    bianchi_classify, check_model_axioms, model_from_pair, nomizu_algebra, nomizu_h0, pair_from_model,
    transvection_algebra, verify_model_isomorphism, BianchiType, InfinitesimalModel, LieAlgebraPresentation,
};
use fedosov_core::{Rational, RationalFunction, Slot, SymplecticSpace, Tensor};
use proptest::prelude::*;
use rand::Rng;

const VV_V: [Slot; 3] = [Slot::Cov, Slot::Cov, Slot::Contra];
const VVV_V: [Slot; 4] = [Slot::Cov, Slot::Cov, Slot::Cov, Slot::Contra];

/// `S_X Y = ω(X,Y) ξ − ω(Y,ξ) X` with constant ξ.
fn linear_type(sp: &SymplecticSpace, xi: &[Rational]) -> Tensor<Rational> {
    let d = sp.dim();
    let fxi = sp.flat(xi);
    Tensor::from_fn(d, &VV_V, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let mut v = Rational::integer(sp.omega_entry(i, j)) * &xi[k];
        if i == k {
            v = v + &fxi[j];
        }
        v
    })
}

fn model_with_structure(n: usize, rt: Tensor<Rational>, tt: Tensor<Rational>, s: &Tensor<Rational>) -> InfinitesimalModel {
    InfinitesimalModel::new(SymplecticSpace::new(n), rt, tt, vec![("S".into(), s.clone())]).unwrap()
}

fn flat_coords(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect()
}

/// Curvature and torsion of the connection with constant Christoffel symbols
/// `gamma − s` on flat space, computed by the chart engine.
fn chart_oracle(n: usize, gamma: &Tensor<Rational>, s: &Tensor<Rational>) -> (Tensor<Rational>, Tensor<Rational>) {
    let coords = flat_coords(n);
    let vars = common::vars(&coords.iter().map(String::as_str).collect::<Vec<_>>());
    let lift = |t: &Tensor<Rational>| t.map(|v| RationalFunction::constant_in(vars.clone(), v.clone()));
    let sp = SymplecticSpace::new(n);
    let c = Chart::new(coords, lift(&sp.omega_tensor()), lift(gamma)).unwrap();
    let s_rf = lift(s);
    let at = vec![Rational::zero(); 2 * n];
    let r = c.eval_tensor(&c.curvature(Connection::Tilde(&s_rf)).unwrap(), &at).unwrap();
    let t = c.eval_tensor(&c.torsion(Connection::Tilde(&s_rf)).unwrap(), &at).unwrap();
    (r, t)
}

fn chart_base(n: usize, gamma: &Tensor<Rational>) -> (Tensor<Rational>, Tensor<Rational>) {
    chart_oracle(n, gamma, &Tensor::vv_v(2 * n))
}

#[test]
fn trivial_model_passes_every_axiom() {
    for n in 1..=2 {
        let report = check_model_axioms(&InfinitesimalModel::flat(n));
        assert!(report.all_pass());
        assert!(report.checks.iter().any(|c| c.name == "R.omega = 0"));
    }
}

#[test]
fn perturbed_torsion_reports_a_component() {
    let mut r = rng(30);
    let sp = SymplecticSpace::new(1);
    let xi = vec![Rational::one(), Rational::zero()];
    let s = linear_type(&sp, &xi);
    let (rt, tt) = model_from_pair(&Tensor::vvv_v(2), &Tensor::vv_v(2), &s).unwrap();
    assert!(check_model_axioms(&model_with_structure(1, rt.clone(), tt.clone(), &s)).all_pass());
    for _ in 0..10 {
        let mut bad = tt.clone();
        let ix = [r.gen_range(0..2), r.gen_range(0..2), r.gen_range(0..2)];
        bad.set(&ix, bad.get(&ix).clone() + Rational::one());
        let report = check_model_axioms(&model_with_structure(1, rt.clone(), bad, &s));
        let failing: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
        assert!(!failing.is_empty());
        assert!(failing.iter().all(|c| c.witness.is_some()));
    }
}

#[test]
fn zero_structure_leaves_the_pair_unchanged() {
    let mut r = rng(31);
    let rr = tensor(&mut r, 4, &VVV_V, 0.2);
    let t = tensor(&mut r, 4, &VV_V, 0.3);
    let (rt, tt) = model_from_pair(&rr, &t, &Tensor::vv_v(4)).unwrap();
    assert_eq!((rt, tt), (rr, t));
}

#[test]
fn linear_type_over_the_trivial_pair() {
    let sp = SymplecticSpace::new(1);
    let xi = vec![Rational::one(), Rational::zero()];
    let s = linear_type(&sp, &xi);
    // S_X Y = ω(X,Y)ξ − ω(Y,ξ)X; ω(e2,e1) = −1
    assert_eq!(s.get(&[0, 1, 0]), &Rational::integer(2));
    assert_eq!(s.get(&[1, 0, 0]), &Rational::integer(-1));
    assert_eq!(s.get(&[1, 1, 1]), &Rational::one());
    assert_eq!(s.get(&[0, 0, 0]), &Rational::zero());
    let (rt, tt) = model_from_pair(&Tensor::vvv_v(2), &Tensor::vv_v(2), &s).unwrap();
    // T̃_{e1}e2 = −(S_{e1}e2 − S_{e2}e1) = −3e1
    assert_eq!(tt.get(&[0, 1, 0]), &Rational::integer(-3));
    assert_eq!(tt.get(&[0, 1, 1]), &Rational::zero());
    // R̃_{e1e2} = [S_{e1}, S_{e2}] − S_{3e1}
    let s1 = s.endomorphism_at(0);
    let s2 = s.endomorphism_at(1);
    let expected = s1.mul(&s2).sub(&s2.mul(&s1)).sub(&s1.scale(&Rational::integer(3)));
    assert_eq!(rt.endomorphism_at2(0, 1), expected);
    assert_eq!(pair_from_model(&rt, &tt, &s).unwrap(), (Tensor::vvv_v(2), Tensor::vv_v(2)));
}

#[test]
fn model_from_pair_matches_the_chart_engine() {
    // Γ = S constant: ∇ − S is the flat connection, which parallelizes S
    let mut r = rng(32);
    for k in 0..20 {
        let n = 1 + k % 2;
        let d = 2 * n;
        let s = tensor(&mut r, d, &VV_V, 0.4);
        let (rr, t) = chart_base(n, &s);
        assert_eq!(chart_oracle(n, &s, &s), (Tensor::vvv_v(d), Tensor::vv_v(d)));
        assert_eq!(model_from_pair(&rr, &t, &s).unwrap(), (Tensor::vvv_v(d), Tensor::vv_v(d)));
        assert_eq!(pair_from_model(&Tensor::vvv_v(d), &Tensor::vv_v(d), &s).unwrap(), (rr, t));
    }
}

#[test]
fn model_from_pair_matches_the_examples() {
    let p = [Rational::integer(2), Rational::new(-1, 3)];
    for c in [chart::example2(), chart::example1_emended().unwrap()] {
        let xi = c.vector_field("xi").unwrap();
        let s = c.linear_type_structure(&xi).unwrap();
        let at = |t: &Tensor<RationalFunction>| c.eval_tensor(t, &p).unwrap();
        let (rr, t) = (at(&c.curvature(Connection::Base).unwrap()), at(&c.torsion(Connection::Base).unwrap()));
        let tilde = Connection::Tilde(&s);
        let expected = (at(&c.curvature(tilde).unwrap()), at(&c.torsion(tilde).unwrap()));
        assert_eq!(model_from_pair(&rr, &t, &at(&s)).unwrap(), expected);
    }
}

#[test]
fn pair_round_trip() {
    let mut r = rng(33);
    for k in 0..100 {
        let d = 2 * (1 + k % 2);
        let rr = tensor(&mut r, d, &VVV_V, 0.2);
        let t = tensor(&mut r, d, &VV_V, 0.3);
        let s = tensor(&mut r, d, &VV_V, 0.3);
        let (rt, tt) = model_from_pair(&rr, &t, &s).unwrap();
        assert_eq!(pair_from_model(&rt, &tt, &s).unwrap(), (rr.clone(), t.clone()));
        let (r2, t2) = pair_from_model(&rr, &t, &s).unwrap();
        assert_eq!(model_from_pair(&r2, &t2, &s).unwrap(), (rr, t));
    }
}

#[test]
fn identity_is_an_isomorphism_and_non_symplectic_maps_are_not() {
    let m = InfinitesimalModel::flat(1);
    let id: Matrix<Rational> = Matrix::identity(2);
    assert!(verify_model_isomorphism(&id, &m, &m).unwrap().all_pass());
    let mut f: Matrix<Rational> = Matrix::identity(2);
    f[(0, 0)] = Rational::integer(2);
    let report = verify_model_isomorphism(&f, &m, &m).unwrap();
    assert!(!report.get("f omega = omega'").unwrap().pass);
    assert!(!report.get("f symplectic").unwrap().pass);
    assert!(report.get("f R = R'").unwrap().pass);
}

#[test]
fn t1_models_are_equivariant() {
    // f swaps e1↔e2 and e3↔e4, a symplectic map for n = 2
    let sp = SymplecticSpace::new(2);
    let mut f: Matrix<Rational> = Matrix::zeros(4, 4);
    for (a, b) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
        f[(b, a)] = Rational::one();
    }
    assert!(sp.is_symplectic_matrix(&f));
    let mut r = rng(34);
    let u = vector(&mut r, 4);
    let fu = f.mul_vec(&u);
    let model = |u: &[Rational]| {
        let tt = sp.torsion_raise(&fedosov_core::decomposition::t1_generator(&sp, u)).unwrap();
        InfinitesimalModel::new(sp, Tensor::vvv_v(4), tt, Vec::new()).unwrap()
    };
    let (m, m2) = (model(&u), model(&fu));
    assert!(verify_model_isomorphism(&f, &m, &m2).unwrap().all_pass());
    assert!(verify_model_isomorphism(&f.inverse().unwrap(), &m2, &m).unwrap().all_pass());
}

#[test]
fn stabilizer_of_the_trivial_model_is_sp() {
    for n in 1..=2 {
        let m = InfinitesimalModel::flat(n);
        let h0 = nomizu_h0(&m).unwrap();
        assert_eq!(h0.len(), n * (2 * n + 1));
        let sp = SymplecticSpace::new(n);
        for a in &h0 {
            let w = sp.omega_matrix::<Rational>();
            assert!(a.transpose().mul(&w).add(&w.mul(a)).is_zero());
        }
        let g = nomizu_algebra(&m).unwrap();
        assert_eq!(g.dim(), 2 * n + h0.len());
        assert!(g.jacobi_check().pass);
        let t = transvection_algebra(&m).unwrap();
        assert!(t.h0_prime.is_empty());
        assert_eq!(t.algebra.dim(), 2 * n);
    }
}

#[test]
fn generic_curvature_shrinks_the_stabilizer() {
    let mut r = rng(35);
    let sp = SymplecticSpace::new(1);
    let rr = tensor(&mut r, 2, &VVV_V, 0.8);
    let rr = rr.sub(&rr.permute(&[1, 0, 2, 3]));
    assert!(!rr.is_zero());
    let m = InfinitesimalModel::new(sp, rr, Tensor::vv_v(2), Vec::new()).unwrap();
    assert!(nomizu_h0(&m).unwrap().len() < 3);
}

/// Linear-type models over the trivial pair; these satisfy every axiom.
fn linear_type_model(r: &mut impl Rng, n: usize) -> InfinitesimalModel {
    let sp = SymplecticSpace::new(n);
    let xi = loop {
        let v = vector(r, 2 * n);
        if v.iter().any(|x| !x.is_zero()) {
            break v;
        }
    };
    let s = linear_type(&sp, &xi);
    let (rt, tt) = model_from_pair(&Tensor::vvv_v(2 * n), &Tensor::vv_v(2 * n), &s).unwrap();
    model_with_structure(n, rt, tt, &s)
}

#[test]
fn transvection_algebra_lies_in_the_stabilizer() {
    let mut r = rng(36);
    for k in 0..20 {
        let m = linear_type_model(&mut r, 1 + k % 2);
        assert!(check_model_axioms(&m).all_pass());
        let t = transvection_algebra(&m).unwrap();
        assert!(t.contained_in_h0.pass);
        assert!(t.algebra.jacobi_check().pass);
        assert!(nomizu_algebra(&m).unwrap().jacobi_check().pass);
    }
}

#[test]
fn isomorphism_verification_is_symmetric() {
    let mut r = rng(37);
    for k in 0..20 {
        let n = 1 + k % 2;
        let m = linear_type_model(&mut r, n);
        let f = symplectic_matrix(&mut r, n);
        let m2 = m.push_forward(&f).unwrap();
        let f_inv = f.inverse().unwrap();
        assert!(verify_model_isomorphism(&f, &m, &m2).unwrap().all_pass());
        assert!(verify_model_isomorphism(&f_inv, &m2, &m).unwrap().all_pass());
        // a wrong target disagrees both ways
        let other = linear_type_model(&mut r, n);
        let forward = verify_model_isomorphism(&f, &m, &other).unwrap().all_pass();
        let backward = verify_model_isomorphism(&f_inv, &other, &m).unwrap().all_pass();
        assert_eq!(forward, backward);
    }
}

fn flatten(a: &Matrix<Rational>) -> Vec<Rational> {
    a.to_rows().into_iter().flatten().collect()
}

#[test]
fn isomorphisms_extend_to_the_nomizu_algebras() {
    let mut r = rng(38);
    for k in 0..10 {
        let n = 1 + k % 2;
        let d = 2 * n;
        let m = linear_type_model(&mut r, n);
        let f = symplectic_matrix(&mut r, n);
        let f_inv = f.inverse().unwrap();
        let m2 = m.push_forward(&f).unwrap();
        let (h, h2) = (nomizu_h0(&m).unwrap(), nomizu_h0(&m2).unwrap());
        assert_eq!(h.len(), h2.len());
        let (g, g2) = (nomizu_algebra(&m).unwrap(), nomizu_algebra(&m2).unwrap());
        // columns of F̃: images of the basis of g in the basis of g2
        let total = d + h.len();
        let h2_cols: Vec<Vec<Rational>> = h2.iter().map(flatten).collect();
        let mut cols = Vec::new();
        for j in 0..d {
            let mut c = f.column(j);
            c.resize(total, Rational::zero());
            cols.push(c);
        }
        for a in &h {
            let image = f.mul(a).mul(&f_inv);
            let coords = linalg::coordinates(&h2_cols, &flatten(&image)).expect("conjugate lies in h0'");
            let mut c = vec![Rational::zero(); d];
            c.extend(coords);
            cols.push(c);
        }
        let ft = Matrix::from_columns(&cols, total);
        assert_eq!(g2.change_basis(&ft).unwrap().structure, g.structure);
    }
}

#[test]
fn bianchi_types_of_reference_algebras() {
    let cls = |b: &[(usize, usize, &[(usize, i64)])]| {
        bianchi_classify(&LieAlgebraPresentation::from_brackets(&["a", "b", "c"], b)).unwrap()
    };
    assert_eq!(cls(&[]).kind, BianchiType::I);
    assert_eq!(cls(&[(0, 1, &[(2, 1)])]).kind, BianchiType::II);
    let vi = cls(&[(2, 0, &[(0, 1)]), (2, 1, &[(1, 2)])]);
    assert_eq!(vi.kind, BianchiType::VI);
    assert_eq!(vi.parameters, vec![Rational::new(1, 2), Rational::integer(2)]);
    let bad = LieAlgebraPresentation::from_brackets(&["a", "b"], &[]);
    assert!(bianchi_classify(&bad).is_err());
}

#[test]
fn example_two_at_a_point() {
    let c = chart::example2();
    let xi = c.vector_field("xi").unwrap();
    let s = c.linear_type_structure(&xi).unwrap();
    let p = [Rational::one(), Rational::zero()];
    let pm = chart::model_at_point(&c, &s, &p).unwrap();
    let m = &pm.model;
    assert!(check_model_axioms(m).all_pass());
    // coordinates of ξ and η at the point, in the model basis
    let b_inv = pm.basis.inverse().unwrap();
    let at = |name: &str| b_inv.mul_vec(&c.eval_tensor(c.field(name).unwrap(), &p).unwrap().into_data());
    let (xi_p, eta_p) = (at("xi"), at("eta"));
    let r = m.curvature();
    let apply = |x: &[Rational], y: &[Rational], z: &[Rational]| -> Vec<Rational> {
        (0..2)
            .map(|e| {
                let mut acc = Rational::zero();
                for a in 0..2 {
                    for b in 0..2 {
                        for cc in 0..2 {
                            acc = acc + &(x[a].clone() * &y[b] * &z[cc] * r.get(&[a, b, cc, e]));
                        }
                    }
                }
                acc
            })
            .collect()
    };
    let minus_two_xi: Vec<Rational> = xi_p.iter().map(|v| v.clone() * &Rational::integer(-2)).collect();
    assert_eq!(apply(&xi_p, &eta_p, &eta_p), minus_two_xi);
    assert!(apply(&xi_p, &eta_p, &xi_p).iter().all(Rational::is_zero));

    // R̃_{ξη} lies in h0 and spans h0'
    let endo = Matrix::from_rows(
        (0..2).map(|row| (0..2).map(|col| apply(&xi_p, &eta_p, &sp_basis(col))[row].clone()).collect()).collect(),
    );
    let h0: Vec<Vec<Rational>> = nomizu_h0(m).unwrap().iter().map(flatten).collect();
    assert!(linalg::coordinates(&h0, &flatten(&endo)).is_some());
    let t = transvection_algebra(m).unwrap();
    assert_eq!(t.h0_prime.len(), 1);
    assert!(linalg::same_span(&[flatten(&t.h0_prime[0])], &[flatten(&endo)]));
    assert!(t.contained_in_h0.pass);
    assert_eq!(t.algebra.dim(), 3);
    assert!(t.algebra.jacobi_check().pass);
    let class = bianchi_classify(&t.algebra).unwrap();
    assert_eq!(class.kind, BianchiType::VI);
    assert_eq!(class.parameters, vec![Rational::new(1, 2), Rational::integer(2)]);
    assert!(nomizu_algebra(m).unwrap().jacobi_check().pass);
}

fn sp_basis(i: usize) -> Vec<Rational> {
    SymplecticSpace::new(1).basis_vector(i)
}

#[test]
fn example_one_model_has_no_curvature() {
    let c = chart::example1_emended().unwrap();
    let xi = c.vector_field("xi").unwrap();
    let s = c.linear_type_structure(&xi).unwrap();
    let pm = chart::model_at_point(&c, &s, &[Rational::one(), Rational::zero()]).unwrap();
    assert!(pm.model.curvature().is_zero());
    assert!(check_model_axioms(&pm.model).all_pass());
    let g = nomizu_algebra(&pm.model).unwrap();
    assert!(g.jacobi_check().pass);
    // with R̃ = 0 the V-part bracket is −T̃
    let tt = pm.model.torsion();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(g.structure[i][j][k], -tt.get(&[i, j, k]).clone());
            }
        }
    }
    let t = transvection_algebra(&pm.model).unwrap();
    assert!(t.h0_prime.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stabilizer_preserves_omega(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let m = linear_type_model(&mut r, n);
        let w = m.space().omega_matrix::<Rational>();
        for a in nomizu_h0(&m).unwrap() {
            prop_assert!(a.transpose().mul(&w).add(&w.mul(&a)).is_zero());
        }
    }

    #[test]
    fn small_structure_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = tensor(&mut r, 2, &VV_V, 0.5);
        let rr = tensor(&mut r, 2, &VVV_V, 0.5);
        let t = tensor(&mut r, 2, &VV_V, 0.5);
        let c = small_rational(&mut r);
        let (rt, tt) = model_from_pair(&rr, &t, &s.scale(&c)).unwrap();
        prop_assert_eq!(pair_from_model(&rt, &tt, &s.scale(&c)).unwrap(), (rr, t));
    }
}
