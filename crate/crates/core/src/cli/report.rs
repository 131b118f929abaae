use serde::Serialize;
use serde_json::Value;

/// One verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, witness: None }
    }

    pub fn with_witness(name: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        Check { name: name.into(), pass, witness: if pass { None } else { witness } }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub options: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub timing: Timing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Everything except the timing, as compact JSON.
    pub fn payload(&self) -> String {
        #[derive(Serialize)]
        struct Payload<'a> {
            command: &'a str,
            options: &'a Value,
            result: &'a Value,
            checks: &'a [Check],
        }
        serde_json::to_string(&Payload { command: &self.command, options: &self.options, result: &self.result, checks: &self.checks })
            .expect("reports serialize")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            Format::Csv => self.to_csv(),
        }
    }

    /// Rows `section,key,value`: result fields as JSON, then checks.
    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "key", "value"]).unwrap();
        w.write_record(["command", "", &self.command]).unwrap();
        if let Value::Object(m) = &self.result {
            for (k, v) in m {
                w.write_record(["result", k, &v.to_string()]).unwrap();
            }
        } else {
            w.write_record(["result", "", &self.result.to_string()]).unwrap();
        }
        for c in &self.checks {
            let v = match (&c.pass, &c.witness) {
                (true, _) => "pass".to_string(),
                (false, Some(wit)) => format!("fail: {wit}"),
                (false, None) => "fail".to_string(),
            };
            w.write_record(["check", &c.name, &v]).unwrap();
        }
        w.write_record(["timing", "elapsed_ms", &self.timing.elapsed_ms.to_string()]).unwrap();
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}
