use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chevgauge::algebra::{parse_field_elem, FieldElem, Matrix, Scalar, Var};
use chevgauge::chevalley::{decompose, ChevalleyBasis};
use chevgauge::gauge::reduce_to_normal_form;
use chevgauge::normal_forms::{
    build_parameter_matrix, expand_theorem1, mitschi_singer_matrix, sl_genericity_chain, verify_annihilator,
};
use chevgauge::roots::{build_root_system, GroupType, SignedRoot};
use chevgauge::selftest::run_selftest;

use crate::schema::{
    int_matrix, text_matrix, BasisOutput, CertificateOut, GaugeOut, GenericityOutput, MatrixInput,
    ReduceOutput, RootVector, RootsOutput, Theorem1Output, SCHEMA,
};
use crate::{CliError, Command, Emit};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Roots {
            group_type,
            rank,
            output,
        } => {
            let rs = build_root_system(*group_type, *rank)?;
            emit_json(&RootsOutput::new(&rs), output.as_deref())
        }
        Command::Basis {
            group_type,
            rank,
            output,
        } => emit_json(&basis(*group_type, *rank)?, output.as_deref()),
        Command::Reduce { input, output } => emit_json(&reduce(input)?, output.as_deref()),
        Command::Theorem1 {
            group_type,
            rank,
            emit,
            verify,
            output,
        } => theorem1(*group_type, *rank, *emit, *verify, output.as_deref()),
        Command::GenericityDemo { rank, f, g, a, output } => {
            emit_json(&genericity(*rank, f, g, a)?, output.as_deref())
        }
        Command::MitschiSinger {
            group_type,
            rank,
            h,
            output,
        } => emit_json(&mitschi_singer(*group_type, *rank, h)?, output.as_deref()),
        Command::Selftest { max_rank } => {
            let reports = run_selftest(*max_rank);
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{}\n", r));
            }
            write_out(&text, None)?;
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(CliError::Failed("selftest failed".into()))
            }
        }
    }
}

fn write_out(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

fn emit_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("output types serialize");
    text.push('\n');
    write_out(&text, path)
}

fn basis(group_type: GroupType, rank: usize) -> Result<BasisOutput> {
    let b = ChevalleyBasis::new(group_type, rank)?;
    let rs = b.root_system();
    let vectors = |negative: bool| {
        (0..rs.num_positive())
            .map(|k| {
                let s = if negative { SignedRoot::neg(k) } else { SignedRoot::pos(k) };
                RootVector {
                    root: rs.root(s).coords().to_vec(),
                    matrix: int_matrix(b.x(s)),
                }
            })
            .collect()
    };
    Ok(BasisOutput {
        schema: SCHEMA.into(),
        group_type: group_type.to_string(),
        rank,
        dim: b.dim(),
        cartan: (0..rank).map(|i| int_matrix(b.h(i))).collect(),
        positive: vectors(false),
        negative: vectors(true),
    })
}

fn parse_entry(s: &str) -> Result<FieldElem> {
    Ok(parse_field_elem(s)?)
}

fn uses_parameters(e: &FieldElem) -> bool {
    e.numer().vars().iter().chain(e.denom().vars().iter()).any(|v| *v != Var::Z)
}

fn reduce(path: &Path) -> Result<ReduceOutput> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let input: MatrixInput = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: invalid input: {}", path.display(), e)))?;
    let group_type: GroupType = input.group_type.parse()?;
    if input.field != "Cz" && input.field != "Ct" {
        return Err(CliError::Usage(format!(
            "field must be \"Cz\" or \"Ct\", got \"{}\"",
            input.field
        )));
    }
    let rows = input
        .entries
        .iter()
        .map(|r| r.iter().map(|s| parse_entry(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if input.field == "Cz" && rows.iter().flatten().any(uses_parameters) {
        return Err(CliError::Usage("entries use parameters t_i but field is \"Cz\"".into()));
    }
    let m = Matrix::from_rows(rows)?;
    let b = ChevalleyBasis::new(group_type, input.rank)?;
    if m.rows() != b.dim() || m.cols() != b.dim() {
        return Err(chevgauge::Error::UnsupportedShape(format!(
            "{}{} acts on dimension {}, input is {}x{}",
            group_type,
            input.rank,
            b.dim(),
            m.rows(),
            m.cols()
        ))
        .into());
    }
    let a = decompose(&m, &b)?;
    let res = reduce_to_normal_form(&a)?;
    res.verify(&a)?;
    Ok(ReduceOutput {
        schema: SCHEMA.into(),
        group_type: group_type.to_string(),
        rank: input.rank,
        input: text_matrix(&m),
        normal: text_matrix(res.normal.matrix()),
        specialization: res.specialization.iter().map(ToString::to_string).collect(),
        gauge: GaugeOut::new(&res.gauge, Some(b.root_system())),
        certified: true,
    })
}

fn theorem1(group_type: GroupType, rank: usize, emit: Emit, verify: bool, output: Option<&Path>) -> Result<()> {
    let a = build_parameter_matrix(group_type, rank)?;
    let wants_scalar = emit != Emit::Matrix || verify;
    let ode = if wants_scalar {
        Some(expand_theorem1(group_type, rank)?)
    } else {
        None
    };
    let cert = match (&ode, verify) {
        (Some(ode), true) => Some(verify_annihilator(&a, ode, true)?),
        _ => None,
    };
    if emit == Emit::Scalar {
        let mut text = format!("{}\n", ode.as_ref().expect("scalar emission has an equation"));
        if let Some(c) = &cert {
            let eps: Vec<String> = c.epsilon.iter().map(ToString::to_string).collect();
            text.push_str(&format!("certificate: {}\n", if c.is_valid() { "valid" } else { "invalid" }));
            text.push_str(&format!("epsilon: ({})\n", eps.join(", ")));
            text.push_str(&format!("rank witness: {}\n", c.rank_witness));
        }
        return write_out(&text, output);
    }
    let out = Theorem1Output {
        schema: SCHEMA.into(),
        group_type: group_type.to_string(),
        rank,
        ode: if emit == Emit::Both { ode.as_ref().map(ToString::to_string) } else { None },
        matrix: Some(text_matrix(a.matrix())),
        certificate: cert.map(|c| CertificateOut {
            valid: c.is_valid(),
            epsilon: c.epsilon.clone(),
            rank_witness: c.rank_witness.to_string(),
        }),
    };
    emit_json(&out, output)
}

fn genericity(rank: usize, f: &str, g: &str, a: &[String]) -> Result<GenericityOutput> {
    if a.len() != rank + 1 {
        return Err(CliError::Usage(format!(
            "--a needs {} comma-separated entries, got {}",
            rank + 1,
            a.len()
        )));
    }
    let a: Vec<FieldElem> = a.iter().map(|s| parse_entry(s)).collect::<Result<_>>()?;
    let chain = sl_genericity_chain(&a, &parse_entry(f)?, &parse_entry(g)?)?;
    Ok(GenericityOutput {
        schema: SCHEMA.into(),
        rank,
        input: text_matrix(&chain.input),
        a1: text_matrix(&chain.a1),
        a2: text_matrix(&chain.a2),
        final_matrix: text_matrix(&chain.final_matrix),
        specialization: chain.reduction.specialization.iter().map(ToString::to_string).collect(),
        gauge: GaugeOut::new(&chain.gauge, Some(chain.reduction.normal.basis().root_system())),
        certified: true,
    })
}

fn parse_rational(s: &str) -> Result<Scalar> {
    parse_entry(s)?
        .as_constant()
        .ok_or_else(|| CliError::Usage(format!("'{}' is not a rational number", s)))
}

fn mitschi_singer(group_type: GroupType, rank: usize, h: &[String]) -> Result<ReduceOutput> {
    let h: Vec<Scalar> = h.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
    if h.len() != rank {
        return Err(CliError::Usage(format!("--h needs {} values, got {}", rank, h.len())));
    }
    let a = mitschi_singer_matrix(group_type, rank, &h)?;
    let res = reduce_to_normal_form(&a)?;
    res.verify(&a)?;
    Ok(ReduceOutput {
        schema: SCHEMA.into(),
        group_type: group_type.to_string(),
        rank,
        input: text_matrix(a.matrix()),
        normal: text_matrix(res.normal.matrix()),
        specialization: res.specialization.iter().map(ToString::to_string).collect(),
        gauge: GaugeOut::new(&res.gauge, Some(a.basis().root_system())),
        certified: true,
    })
}
