//! Named codes.

use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec};
use crate::pauli::{phi, validate_check_matrix, CheckMatrix, PauliString, MAX_QUBITS};

const HAMMING_7: [&str; 3] = ["1110100", "1101010", "1011001"];

fn from_paulis(gens: &[String]) -> Result<CheckMatrix> {
    let rows = gens
        .iter()
        .map(|g| g.parse::<PauliString>().map(|p| *phi(&p).bits()))
        .collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, BitVec::len);
    validate_check_matrix(BitMat::from_rows(cols, rows)?, true)
}

/// `XZZXI` and its cyclic shifts.
pub fn five_qubit() -> CheckMatrix {
    let gens: Vec<String> = (0..4).map(|k| rotate("XZZXI", k)).collect();
    from_paulis(&gens).expect("five-qubit generators commute")
}

fn rotate(s: &str, k: usize) -> String {
    let n = s.len();
    (0..n).map(|j| s.as_bytes()[(j + n - k) % n] as char).collect()
}

/// CSS code with the `[7,4]` Hamming parity checks in both halves.
pub fn steane() -> CheckMatrix {
    let mut rows: Vec<String> = HAMMING_7.iter().map(|r| format!("{r}|0000000")).collect();
    rows.extend(HAMMING_7.iter().map(|r| format!("0000000|{r}")));
    let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    validate_check_matrix(BitMat::parse_rows(&refs).expect("well-formed rows"), true)
        .expect("Hamming code contains its dual")
}

fn check_qubits(name: &str, n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_QUBITS {
        return Err(Error::UnknownCode(format!("{name} needs {min}..={MAX_QUBITS} qubits, got {n}")));
    }
    Ok(())
}

/// A single `Z` on the first of `n` qubits.
pub fn single_z(n: usize) -> Result<CheckMatrix> {
    check_qubits("single_z", n, 1)?;
    let gen = format!("Z{}", "I".repeat(n - 1));
    from_paulis(&[gen])
}

/// `Z_i Z_{i+1}` for `i = 1..n−1`: `n − 1` generators, one logical qubit.
pub fn repetition_z(n: usize) -> Result<CheckMatrix> {
    check_qubits("repetition_z", n, 2)?;
    let gens: Vec<String> = (0..n - 1)
        .map(|i| (0..n).map(|j| if j == i || j == i + 1 { 'Z' } else { 'I' }).collect())
        .collect();
    from_paulis(&gens)
}

/// Splits `name(n)` or `name:n`.
fn split_arg(name: &str) -> Option<(&str, &str)> {
    if let Some(open) = name.find('(') {
        let arg = name[open + 1..].strip_suffix(')')?;
        Some((&name[..open], arg))
    } else {
        name.split_once(':')
    }
}

/// Looks up `five_qubit`, `steane`, `single_z(n)` or `repetition_z(n)`
/// (also written `single_z:n`).
pub fn named_code(name: &str) -> Result<CheckMatrix> {
    match name {
        "five_qubit" => return Ok(five_qubit()),
        "steane" => return Ok(steane()),
        _ => {}
    }
    let unknown = || Error::UnknownCode(name.to_owned());
    let (base, arg) = split_arg(name).ok_or_else(unknown)?;
    if arg.is_empty() || !arg.bytes().all(|b| b.is_ascii_digit()) {
        return Err(unknown());
    }
    let n: usize = arg.parse().map_err(|_| unknown())?;
    match base {
        "single_z" => single_z(n),
        "repetition_z" => repetition_z(n),
        _ => Err(unknown()),
    }
}
