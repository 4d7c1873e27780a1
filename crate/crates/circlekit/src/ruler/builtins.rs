//! The built-in ruler programs: the parallel constructions and the three
//! problems they solve. Builtins are generated as DSL text and parsed, so
//! they go through the same grammar and audit as user programs.

use super::{parse, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinId {
    ParallelToDiameter,
    ParallelToLine,
    Problem1,
    Problem2,
    Problem3,
}

impl BuiltinId {
    pub const ALL: [BuiltinId; 5] = [
        BuiltinId::ParallelToDiameter,
        BuiltinId::ParallelToLine,
        BuiltinId::Problem1,
        BuiltinId::Problem2,
        BuiltinId::Problem3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BuiltinId::ParallelToDiameter => "parallel_to_diameter",
            BuiltinId::ParallelToLine => "parallel_to_line",
            BuiltinId::Problem1 => "problem1",
            BuiltinId::Problem2 => "problem2",
            BuiltinId::Problem3 => "problem3",
        }
    }
}

impl std::str::FromStr for BuiltinId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        BuiltinId::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| format!("unknown builtin '{s}'"))
    }
}

/// Emitter for program text with fresh-name bookkeeping.
struct Builder {
    text: String,
    counter: u32,
}

impl Builder {
    fn new() -> Self {
        Builder { text: String::new(), counter: 0 }
    }

    fn push(&mut self, line: &str) {
        self.text.push_str(line);
        self.text.push('\n');
    }

    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}_{}", self.counter)
    }

    /// Parallel through `through` to the segment `end1 end2` whose midpoint
    /// `mid` is known: the complete-quadrilateral construction (free point D
    /// beyond `through` on the join with `end2`, two meets, and the output
    /// join). Returns the name of the parallel line.
    fn midpoint_parallel(&mut self, end1: &str, end2: &str, mid: &str, through: &str) -> String {
        let l1 = self.fresh("l");
        let d = self.fresh("D");
        let l2 = self.fresh("l");
        let l3 = self.fresh("l");
        let p = self.fresh("P");
        let l4 = self.fresh("l");
        let l5 = self.fresh("l");
        let n = self.fresh("N");
        let out = self.fresh("par");
        self.push(&format!("{l1} = join({end2}, {through})"));
        self.push(&format!("{d} = on_line({l1}, \"beyond_second\")"));
        self.push(&format!("{l2} = join({d}, {mid})"));
        self.push(&format!("{l3} = join({end1}, {through})"));
        self.push(&format!("{p} = meet({l2}, {l3})"));
        self.push(&format!("{l4} = join({d}, {end1})"));
        self.push(&format!("{l5} = join({end2}, {p})"));
        self.push(&format!("{n} = meet({l4}, {l5})"));
        self.push(&format!("{out} = join({through}, {n})"));
        out
    }

    /// Parallel through `through` to the drawn line `d`, using two diameters
    /// of the given circle: their parallels cut `d` in a segment whose
    /// midpoint is known, reducing to `midpoint_parallel`.
    fn line_parallel(&mut self, d: &str, through: &str) -> String {
        let r = self.fresh("R");
        let lr = self.fresh("l");
        let s = self.fresh("S");
        let u = self.fresh("U");
        let lu = self.fresh("l");
        let v = self.fresh("V");
        let p = self.fresh("P");
        self.push(&format!("{r} = on_circle(\"diam1\")"));
        self.push(&format!("{lr} = join({r}, O)"));
        self.push(&format!("{s} = second_meet({lr}, {r})"));
        self.push(&format!("{u} = on_circle(\"diam2\")"));
        self.push(&format!("{lu} = join({u}, O)"));
        self.push(&format!("{v} = second_meet({lu}, {u})"));
        self.push(&format!("{p} = meet({lr}, {d})"));
        let par_u = self.midpoint_parallel(&r, &s, "O", &u);
        let k = self.fresh("K");
        self.push(&format!("{k} = meet({par_u}, {d})"));
        let par_v = self.midpoint_parallel(&r, &s, "O", &v);
        let l = self.fresh("L");
        self.push(&format!("{l} = meet({par_v}, {d})"));
        self.midpoint_parallel(&k, &l, &p, through)
    }
}

/// Text of a built-in program (exposed so tests can perturb a step).
pub fn builtin_text(id: BuiltinId) -> String {
    let mut b = Builder::new();
    match id {
        BuiltinId::ParallelToDiameter => {
            b.push("# Parallel through a circle point to a diameter, ruler only.");
            b.push("given k : circle_with_center");
            b.push("given O : point");
            b.push("given A : point");
            b.push("given B : point");
            b.push("given M : point");
            let out = b.midpoint_parallel("A", "B", "O", "M");
            b.push(&format!("output {out} : parallel_to_AB"));
        }
        BuiltinId::ParallelToLine => {
            b.push("# Parallel through a point to an arbitrary drawn line.");
            b.push("given k : circle_with_center");
            b.push("given O : point");
            b.push("given D1 : point");
            b.push("given D2 : point");
            b.push("given M : point");
            b.push("d = join(D1, D2)");
            let out = b.line_parallel("d", "M");
            b.push(&format!("output {out} : parallel_to_d"));
        }
        BuiltinId::Problem1 => {
            b.push("# Equal-angle transversal from a circle point M.");
            b.push("given k : circle_with_center");
            b.push("given O : point");
            b.push("given A : point");
            b.push("given B : point");
            b.push("given C : point");
            b.push("given M : point");
            // One diameter; parallels through the vertices to it.
            b.push("R = on_circle(\"diam\")");
            b.push("lR = join(R, O)");
            b.push("S = second_meet(lR, R)");
            let mut far = Vec::new();
            for v in ["A", "B", "C"] {
                let par = b.midpoint_parallel("R", "S", "O", v);
                let vp = b.fresh("far");
                b.push(&format!("{vp} = second_meet({par}, {v})"));
                far.push(vp);
            }
            b.push("lBC = join(B, C)");
            b.push("lCA = join(C, A)");
            b.push("lAB = join(A, B)");
            for (i, (side, foot)) in [("lBC", "A1"), ("lCA", "B1"), ("lAB", "C1")]
                .iter()
                .enumerate()
            {
                let join = b.fresh("m");
                b.push(&format!("{join} = join(M, {})", far[i]));
                b.push(&format!("{foot} = meet({join}, {side})"));
            }
            b.push("t = join(A1, B1)");
            b.push("output t : equal_angles_at_M");
        }
        BuiltinId::Problem2 => {
            b.push("# Circle point generating equal angles with the sides of a");
            b.push("# given transversal A1 B1.");
            b.push("given k : circle_with_center");
            b.push("given O : point");
            b.push("given A : point");
            b.push("given B : point");
            b.push("given C : point");
            b.push("given A1 : point");
            b.push("given B1 : point");
            b.push("lT = join(A1, B1)");
            let par = b.line_parallel("lT", "A");
            b.push(&format!("Ap = second_meet({par}, A)"));
            b.push("lback = join(Ap, A1)");
            b.push("M = second_meet(lback, Ap)");
            b.push("output M : equal_angles_from_M");
        }
        BuiltinId::Problem3 => {
            b.push("# Isogonal of the cevian A Ap, straightedge only.");
            b.push("given k : circle_with_center");
            b.push("given O : point");
            b.push("given A : point");
            b.push("given B : point");
            b.push("given C : point");
            b.push("given Ap : point");
            b.push("lBC = join(B, C)");
            let par = b.line_parallel("lBC", "Ap");
            b.push(&format!("A1 = second_meet({par}, Ap)"));
            b.push("iso = join(A, A1)");
            b.push("output iso : isogonal_of_AAp");
        }
    }
    b.text
}

/// The encoded built-in program.
pub fn builtin(id: BuiltinId) -> Program {
    parse(&builtin_text(id)).expect("builtin text parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ruler::straightedge_audit;

    #[test]
    fn all_builtins_parse_and_pass_the_audit() {
        for id in BuiltinId::ALL {
            let p = builtin(id);
            straightedge_audit(&p).unwrap();
            assert_eq!(p.outputs.len(), 1, "{id:?}");
        }
    }

    #[test]
    fn parallel_to_diameter_move_inventory() {
        // One free point, two meets, six joins: the classical construction.
        let p = builtin(BuiltinId::ParallelToDiameter);
        let frees = p.free_choice_count();
        let meets = p
            .steps
            .iter()
            .filter(|s| matches!(s.call, super::super::Call::Meet(..)))
            .count();
        let joins = p
            .steps
            .iter()
            .filter(|s| matches!(s.call, super::super::Call::Join(..)))
            .count();
        assert_eq!((frees, meets, joins), (1, 2, 6));
    }

    #[test]
    fn problem_builtins_declare_their_predicates() {
        assert_eq!(builtin(BuiltinId::Problem1).outputs[0].1, "equal_angles_at_M");
        assert_eq!(builtin(BuiltinId::Problem2).outputs[0].1, "equal_angles_from_M");
        assert_eq!(builtin(BuiltinId::Problem3).outputs[0].1, "isogonal_of_AAp");
    }
}
