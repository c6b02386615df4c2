//! Homomorphism spaces between modules.
//!
//! A module `M` is spun up from a few seed vectors `v_i`; each basis vector
//! of the spin has the form `ρ(g)v_i`. A homomorphism is then determined by
//! the images `n_i` of the seeds, and it is well defined exactly when the
//! linear relations met during spinning also hold among the `ρ_N(g)n_i`.
//! The relations are imposed one basis vector at a time on a shrinking
//! parameter space.

use crate::exactlin::{FqElem, FqMatrix};

use super::module::Echelon;
use super::{radical, GModule, ModRepError};

pub(crate) struct Spin {
    /// Basis vectors in spin order.
    pub vectors: Vec<Vec<FqElem>>,
    /// `vectors[b] = ρ(elem[b]) · seeds[seed[b]]`.
    pub elem: Vec<usize>,
    pub seed: Vec<usize>,
    pub seeds: Vec<Vec<FqElem>>,
    /// `fresh[b][x]`: applying generator `x` to vector `b` produced a new
    /// basis vector.
    pub fresh: Vec<Vec<bool>>,
}

pub(crate) fn spin_basis(m: &GModule) -> Spin {
    let f = m.field();
    let n = m.dim();
    let k = m.generator_matrices().len();
    let gens = m.group().generators().to_vec();
    // seeds from a complement of the radical give a minimal generating set
    let rad = radical(m);
    let cand = rad.extend_to_basis();
    let mut ech = Echelon::new(f, n);
    let mut sp = Spin {
        vectors: Vec::new(),
        elem: Vec::new(),
        seed: Vec::new(),
        seeds: Vec::new(),
        fresh: Vec::new(),
    };
    for c in rad.cols()..cand.cols() {
        if ech.is_full() {
            break;
        }
        let v = cand.column(c);
        if !ech.insert(&v) {
            continue;
        }
        let si = sp.seeds.len();
        sp.seeds.push(v.clone());
        let start = sp.vectors.len();
        sp.vectors.push(v);
        sp.elem.push(0);
        sp.seed.push(si);
        sp.fresh.push(vec![false; k]);
        let mut b = start;
        while b < sp.vectors.len() {
            for x in 0..k {
                let w = m.generator_matrices()[x].mul_vec(&sp.vectors[b]);
                if ech.insert(&w) {
                    let g = m.group().mul(gens[x], sp.elem[b]);
                    sp.vectors.push(w);
                    sp.elem.push(g);
                    sp.seed.push(si);
                    sp.fresh.push(vec![false; k]);
                    sp.fresh[b][x] = true;
                }
            }
            b += 1;
        }
    }
    debug_assert_eq!(sp.vectors.len(), n);
    sp
}

/// `hom_space`: a basis of `Hom_{kG}(m, n)`, each map a `dim n × dim m`
/// matrix.
pub fn hom_space(m: &GModule, n: &GModule) -> Result<Vec<FqMatrix>, ModRepError> {
    m.same_ring(n)?;
    let f = m.field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let sp = spin_basis(m);
    let s = sp.seeds.len();
    let basis = FqMatrix::from_columns(&f, dm, &sp.vectors);
    let binv = basis.inverse().expect("spin basis spans");
    let k = m.generator_matrices().len();
    let nel = n.element_matrices();
    let ngen = n.generator_matrices();

    let mut params = FqMatrix::identity(&f, s * dn);
    let mut ycache: Vec<Option<FqMatrix>> = vec![None; dm];
    let y = |j: usize, params: &FqMatrix, cache: &mut Vec<Option<FqMatrix>>| -> FqMatrix {
        if cache[j].is_none() {
            let block = params.submatrix(sp.seed[j] * dn, 0, dn, params.cols());
            cache[j] = Some(nel[sp.elem[j]].mul(&block));
        }
        cache[j].clone().unwrap()
    };

    for b in 0..dm {
        let deps: Vec<usize> = (0..k).filter(|&x| !sp.fresh[b][x]).collect();
        if deps.is_empty() {
            continue;
        }
        let r = params.cols();
        let mut blocks = Vec::with_capacity(deps.len());
        for &x in &deps {
            let image = m.generator_matrices()[x].mul_vec(&sp.vectors[b]);
            let coords = binv.mul_vec(&image);
            let mut acc = ngen[x].mul(&y(b, &params, &mut ycache));
            for (j, &c) in coords.iter().enumerate() {
                if c != 0 {
                    acc.add_scaled(&y(j, &params, &mut ycache), f.neg(c));
                }
            }
            blocks.push(acc);
        }
        let refs: Vec<&FqMatrix> = blocks.iter().collect();
        let kernel = FqMatrix::vstack(&refs).kernel_basis();
        if kernel.cols() == 0 {
            return Ok(Vec::new());
        }
        if kernel.cols() < r {
            params = params.mul(&kernel);
            for c in ycache.iter_mut().flatten() {
                *c = c.mul(&kernel);
            }
        }
    }

    let r = params.cols();
    let ys: Vec<FqMatrix> = (0..dm).map(|j| y(j, &params, &mut ycache)).collect();
    let mut out = Vec::with_capacity(r);
    for t in 0..r {
        let mut yt = FqMatrix::zeros(&f, dn, dm);
        for (j, yj) in ys.iter().enumerate() {
            for i in 0..dn {
                yt.set(i, j, yj.get(i, t));
            }
        }
        let x = yt.mul(&binv);
        debug_assert!(m
            .generator_matrices()
            .iter()
            .zip(ngen)
            .all(|(a, b)| x.mul(a) == b.mul(&x)));
        out.push(x);
    }
    Ok(out)
}

/// Intertwining solutions by brute-force linear algebra on all `dim n ·
/// dim m` entries; an independent oracle for tests.
pub fn hom_space_naive(m: &GModule, n: &GModule) -> Result<Vec<FqMatrix>, ModRepError> {
    m.same_ring(n)?;
    let f = m.field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    let vars = dm * dn;
    if vars == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for (a, b) in m.generator_matrices().iter().zip(n.generator_matrices()) {
        // (X a - b X)[i][j] = Σ_l X[i][l] a[l][j] - Σ_l b[i][l] X[l][j]
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![0; vars];
                for l in 0..dm {
                    let v = row[i * dm + l];
                    row[i * dm + l] = f.add(v, a.get(l, j));
                }
                for l in 0..dn {
                    let v = row[l * dm + j];
                    row[l * dm + j] = f.sub(v, b.get(i, l));
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        FqMatrix::zeros(&f, 0, vars)
    } else {
        FqMatrix::from_rows(&f, &rows)
    };
    let k = sys.kernel_basis();
    Ok((0..k.cols())
        .map(|c| FqMatrix::from_vec(&f, dn, dm, k.column(c)))
        .collect())
}
