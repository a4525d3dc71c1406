use super::{Circuit, CircuitTemplate, DephasingPattern, Family, GateOp, TemplateOp, A, B, C, D};
use crate::error::{check_range, Result};
use serde::{Deserialize, Serialize};

/// Symmetric network: Bell pairs on AB and DC, a controlled phase across the
/// mediator, then CNOTs back. Optional phase flips on B and C sit between the
/// controlled phase and the final CNOTs.
///
/// Slices: `t_1` after the Bell stage, `t_2` after CPHASE, `t_3` at the end.
pub fn build_symmetric(p: Option<f64>) -> Result<Circuit> {
    if let Some(p) = p {
        check_range("p", p, 0.0, 1.0)?;
    }
    let mut c = Circuit::new(4);
    c.extend([
        GateOp::H(A),
        GateOp::cnot(A, B),
        GateOp::H(D),
        GateOp::cnot(D, C),
    ])?
    .mark_slice()?;
    c.push(GateOp::cphase(B, C))?;
    if let Some(p) = p {
        c.push(GateOp::phase_flip(B, p))?
            .push(GateOp::phase_flip(C, p))?;
    }
    c.mark_slice()?;
    c.extend([GateOp::cnot(A, B), GateOp::cnot(D, C)])?;
    c.mark_slice()?;
    Ok(c)
}

/// Asymmetric network: a Bell pair on AB is moved to AD by SWAP(B,C) then
/// SWAP(C,D).
pub fn build_asymmetric() -> Result<Circuit> {
    let mut c = Circuit::new(4);
    c.extend([GateOp::H(A), GateOp::cnot(A, B)])?.mark_slice()?;
    c.push(GateOp::Swap(B, C))?.mark_slice()?;
    c.push(GateOp::Swap(C, D))?.mark_slice()?;
    Ok(c)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum StageOrdering {
    /// All BC stages, then all CD stages.
    #[default]
    Sequential,
    /// BC and CD stages alternate.
    Interleaved,
}

/// Where Z(C) sits relative to the partial swap in a V stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum VOrder {
    /// `V = Z_C U`: the swap stage first, then Z on C.
    #[default]
    ZAfterU,
    ZBeforeU,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagedOptions {
    pub ordering: StageOrdering,
    pub v_order: VOrder,
}

fn stage_choice(family: Family, stage: usize, stages: usize, v_order: VOrder) -> TemplateOp {
    let (a, b) = match family {
        Family::Bc => (B, C),
        Family::Cd => (C, D),
    };
    let u = GateOp::partial_swap(a, b, 1.0 / stages as f64);
    let v = match v_order {
        VOrder::ZAfterU => vec![u.clone(), GateOp::Z(C)],
        VOrder::ZBeforeU => vec![GateOp::Z(C), u.clone()],
    };
    TemplateOp::Choice {
        family,
        stage,
        u: vec![u],
        v,
    }
}

/// Bell stage on AB followed by `stages` partial-swap stages per family, each
/// of which a pattern may turn into a V stage.
///
/// Sequential slices: `t_1` Bell, `t_2` BC stages, `t_3` CD stages.
/// Interleaved ordering has a single slice after the Bell stage.
pub fn staged_template(stages: usize, opts: StagedOptions) -> Result<CircuitTemplate> {
    if stages == 0 {
        return Err(crate::Error::Invalid("stages must be at least 1".into()));
    }
    let mut t = CircuitTemplate::new(4, stages);
    t.push(TemplateOp::Fixed(GateOp::H(A)))?
        .push(TemplateOp::Fixed(GateOp::cnot(A, B)))?
        .push(TemplateOp::Mark)?;
    match opts.ordering {
        StageOrdering::Sequential => {
            for s in 0..stages {
                t.push(stage_choice(Family::Bc, s, stages, opts.v_order))?;
            }
            t.push(TemplateOp::Mark)?;
            for s in 0..stages {
                t.push(stage_choice(Family::Cd, s, stages, opts.v_order))?;
            }
        }
        StageOrdering::Interleaved => {
            for s in 0..stages {
                t.push(stage_choice(Family::Bc, s, stages, opts.v_order))?;
                t.push(stage_choice(Family::Cd, s, stages, opts.v_order))?;
            }
        }
    }
    t.push(TemplateOp::Mark)?;
    Ok(t)
}

/// Concrete staged circuit; `None` means every stage is U.
pub fn build_staged(
    stages: usize,
    pattern: Option<&DephasingPattern>,
    opts: StagedOptions,
) -> Result<Circuit> {
    let template = staged_template(stages, opts)?;
    match pattern {
        Some(p) => template.instantiate(p),
        None => template.instantiate(&DephasingPattern::all_u(stages)),
    }
}

/// Staged circuit with a phase-flip channel of strength `p` on C after every
/// partial-swap stage, the channel that temporal averaging emulates.
pub fn build_staged_with_channel(stages: usize, p: f64, opts: StagedOptions) -> Result<Circuit> {
    check_range("p", p, 0.0, 1.0)?;
    let template = staged_template(stages, opts)?;
    let mut c = Circuit::new(4);
    for op in template.ops() {
        match op {
            TemplateOp::Fixed(g) => {
                c.push(g.clone())?;
            }
            TemplateOp::Choice { u, .. } => {
                let flip = GateOp::phase_flip(C, p);
                match opts.v_order {
                    VOrder::ZAfterU => c.extend(u.iter().cloned().chain([flip]))?,
                    VOrder::ZBeforeU => c.extend([flip].into_iter().chain(u.iter().cloned()))?,
                };
            }
            TemplateOp::Mark => {
                c.mark_slice()?;
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::sample_patterns;

    #[test]
    fn symmetric_shape() {
        let c = build_symmetric(None).unwrap();
        assert_eq!(c.gates().len(), 7);
        assert_eq!(c.time_points(), 4);
        let noisy = build_symmetric(Some(0.3)).unwrap();
        assert_eq!(noisy.gates().len(), 9);
        assert_eq!(noisy.slices()[1].len(), 3);
        assert!(build_symmetric(Some(1.2)).is_err());
    }

    #[test]
    fn asymmetric_shape() {
        let c = build_asymmetric().unwrap();
        assert_eq!(c.time_points(), 4);
        assert_eq!(c.slices()[2], &[GateOp::Swap(C, D)]);
    }

    #[test]
    fn one_stage_all_v_is_full_swaps_with_z() {
        let c = build_staged(
            1,
            Some(&DephasingPattern::all_v(1)),
            StagedOptions::default(),
        )
        .unwrap();
        let tail: Vec<_> = c.gates()[2..].to_vec();
        assert_eq!(
            tail,
            vec![
                GateOp::partial_swap(B, C, 1.0),
                GateOp::Z(C),
                GateOp::partial_swap(C, D, 1.0),
                GateOp::Z(C),
            ]
        );
    }

    #[test]
    fn balanced_pattern_gives_four_v_per_family() {
        let p = &sample_patterns(8, 1, true, 0).unwrap()[0];
        let c = build_staged(8, Some(p), StagedOptions::default()).unwrap();
        let z_count = c.gates().iter().filter(|g| **g == GateOp::Z(C)).count();
        assert_eq!(z_count, 8);
        let slices = c.slices();
        assert_eq!(slices.len(), 3);
        assert_eq!(slices[1].iter().filter(|g| **g == GateOp::Z(C)).count(), 4);
        assert_eq!(slices[2].iter().filter(|g| **g == GateOp::Z(C)).count(), 4);
    }

    #[test]
    fn interleaved_alternates_families() {
        let opts = StagedOptions {
            ordering: StageOrdering::Interleaved,
            ..Default::default()
        };
        let c = build_staged(2, None, opts).unwrap();
        let ps: Vec<_> = c.gates()[2..].iter().map(|g| g.qubits()).collect();
        assert_eq!(ps, vec![vec![B, C], vec![C, D], vec![B, C], vec![C, D]]);
    }

    #[test]
    fn channel_variant_places_flips_like_z() {
        let c = build_staged_with_channel(2, 0.5, StagedOptions::default()).unwrap();
        let flips = c
            .gates()
            .iter()
            .filter(|g| matches!(g, GateOp::PhaseFlip { qubit: C, .. }))
            .count();
        assert_eq!(flips, 4);
    }
}
