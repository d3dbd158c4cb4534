//! The Moshaf attribute set: every Hafs variant choice that parameterizes
//! phonetization, with parsing, defaulting, rendering and validation.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

macro_rules! attr_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const VALUES: &'static [&'static str] = &[$($text),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $(Self::$variant => $text),+
                }
            }

            pub fn parse(s: &str) -> Option<Self> {
                match s {
                    $($text => Some(Self::$variant),)+
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

attr_enum!(Rewaya { Hafs => "hafs" });
attr_enum!(RecitationSpeed {
    Mujawad => "mujawad",
    AboveMurattal => "above_murattal",
    Murattal => "murattal",
    Hadr => "hadr",
});
attr_enum!(Takbeer {
    NoTakbeer => "no_takbeer",
    BeginningOfSharh => "beginning_of_sharh",
    EndOfDoha => "end_of_doha",
    GeneralTakbeer => "general_takbeer",
});
attr_enum!(GhonnaLamRaa { Ghonna => "ghonna", NoGhonna => "no_ghonna" });
attr_enum!(MeemAalImran { Waqf => "waqf", Wasl2 => "wasl_2", Wasl6 => "wasl_6" });
attr_enum!(SakenBeforeHamz {
    Tahqeeq => "tahqeeq",
    GeneralSakt => "general_sakt",
    LocalSakt => "local_sakt",
});
attr_enum!(SaktChoice { Sakt => "sakt", Waqf => "waqf", Idraj => "idraj" });
attr_enum!(SaktOrIdgham { Sakt => "sakt", Waqf => "waqf", Idgham => "idgham" });
attr_enum!(AnfalTawba { Waqf => "waqf", Sakt => "sakt", Wasl => "wasl" });
attr_enum!(IzharOrIdgham { Izhar => "izhar", Idgham => "idgham" });
attr_enum!(YaaAtaan { Wasl => "wasl", Hadhf => "hadhf", Ithbat => "ithbat" });
attr_enum!(StartWithIsm { Wasl => "wasl", Lism => "lism", Alism => "alism" });
attr_enum!(SeenOrSaad { Seen => "seen", Saad => "saad" });
attr_enum!(TasheelOrMadd { Tasheel => "tasheel", Madd => "madd" });
attr_enum!(IdghamChoice { Izhar => "izhar", Idgham => "idgham", Waqf => "waqf" });
attr_enum!(NoonTamna { Ishmam => "ishmam", Rawm => "rawm" });
attr_enum!(HarakatDaaf { Fath => "fath", Dam => "dam" });
attr_enum!(AlifSalasila { Hadhf => "hadhf", Ithbat => "ithbat", Wasl => "wasl" });
attr_enum!(IdghamKind { Kamil => "idgham_kamil", Naqis => "idgham_naqis" });
attr_enum!(RaaChoice { Waqf => "waqf", Tafkheem => "tafkheem", Tarqeeq => "tarqeeq" });
attr_enum!(RaaWaslChoice { Wasl => "wasl", Tafkheem => "tafkheem", Tarqeeq => "tarqeeq" });
attr_enum!(MeemMokhfahChoice { Meem => "meem", Ikhfaa => "ikhfaa" });

/// The full recitation-variant configuration. `recitation_speed` and
/// `takbeer` describe recording style and are stored but never consulted by
/// the phonetizer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoshafAttributes {
    pub rewaya: Rewaya,
    pub recitation_speed: RecitationSpeed,
    pub takbeer: Takbeer,
    pub madd_monfasel_len: u8,
    pub madd_mottasel_len: u8,
    pub madd_mottasel_waqf: u8,
    pub madd_aared_len: u8,
    pub madd_alleen_len: u8,
    pub madd_yaa_alayn_alharfy: u8,
    pub ghonna_lam_and_raa: GhonnaLamRaa,
    pub meem_aal_imran: MeemAalImran,
    pub saken_before_hamz: SakenBeforeHamz,
    pub sakt_iwaja: SaktChoice,
    pub sakt_marqdena: SaktChoice,
    pub sakt_man_raq: SaktChoice,
    pub sakt_bal_ran: SaktChoice,
    pub sakt_maleeyah: SaktOrIdgham,
    pub between_anfal_and_tawba: AnfalTawba,
    pub noon_and_yaseen: IzharOrIdgham,
    pub yaa_ataan: YaaAtaan,
    pub start_with_ism: StartWithIsm,
    pub yabsut: SeenOrSaad,
    pub bastah: SeenOrSaad,
    pub almusaytirun: SeenOrSaad,
    pub bimusaytir: SeenOrSaad,
    pub tasheel_or_madd: TasheelOrMadd,
    pub yalhath_dhalik: IdghamChoice,
    pub irkab_maana: IdghamChoice,
    pub noon_tamna: NoonTamna,
    pub harakat_daaf: HarakatDaaf,
    pub alif_salasila: AlifSalasila,
    pub idgham_nakhluqkum: IdghamKind,
    pub raa_firq: RaaChoice,
    pub raa_alqitr: RaaWaslChoice,
    pub raa_misr: RaaWaslChoice,
    pub raa_nudhur: RaaWaslChoice,
    pub raa_yasr: RaaWaslChoice,
    pub meem_mokhfah: MeemMokhfahChoice,
}

/// Field names in canonical rendering order.
pub const FIELD_NAMES: &[&str] = &[
    "rewaya",
    "recitation_speed",
    "takbeer",
    "madd_monfasel_len",
    "madd_mottasel_len",
    "madd_mottasel_waqf",
    "madd_aared_len",
    "madd_alleen_len",
    "madd_yaa_alayn_alharfy",
    "ghonna_lam_and_raa",
    "meem_aal_imran",
    "saken_before_hamz",
    "sakt_iwaja",
    "sakt_marqdena",
    "sakt_man_raq",
    "sakt_bal_ran",
    "sakt_maleeyah",
    "between_anfal_and_tawba",
    "noon_and_yaseen",
    "yaa_ataan",
    "start_with_ism",
    "yabsut",
    "bastah",
    "almusaytirun",
    "bimusaytir",
    "tasheel_or_madd",
    "yalhath_dhalik",
    "irkab_maana",
    "noon_tamna",
    "harakat_daaf",
    "alif_salasila",
    "idgham_nakhluqkum",
    "raa_firq",
    "raa_alqitr",
    "raa_misr",
    "raa_nudhur",
    "raa_yasr",
    "meem_mokhfah",
];

/// The four fields without a documented default.
pub const REQUIRED_FIELDS: &[&str] = &[
    "madd_monfasel_len",
    "madd_mottasel_len",
    "madd_mottasel_waqf",
    "madd_aared_len",
];

const MONFASEL_SET: &[u8] = &[2, 3, 4, 5, 6];
const MOTTASEL_SET: &[u8] = &[4, 5, 6];
const AARED_SET: &[u8] = &[2, 4, 6];

/// Outcome of [`validate_attributes`]: hard violations plus advisory
/// warnings for values whose status differs between published sources.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl MoshafAttributes {
    /// Builds a configuration from the four required madd lengths, setting
    /// every other field to its documented default. `madd_alleen_len` copies
    /// `madd_aared_len`.
    pub fn with_required(
        madd_monfasel_len: u8,
        madd_mottasel_len: u8,
        madd_mottasel_waqf: u8,
        madd_aared_len: u8,
    ) -> Self {
        MoshafAttributes {
            rewaya: Rewaya::Hafs,
            recitation_speed: RecitationSpeed::Murattal,
            takbeer: Takbeer::NoTakbeer,
            madd_monfasel_len,
            madd_mottasel_len,
            madd_mottasel_waqf,
            madd_aared_len,
            madd_alleen_len: madd_aared_len,
            madd_yaa_alayn_alharfy: 6,
            ghonna_lam_and_raa: GhonnaLamRaa::NoGhonna,
            meem_aal_imran: MeemAalImran::Waqf,
            saken_before_hamz: SakenBeforeHamz::Tahqeeq,
            sakt_iwaja: SaktChoice::Waqf,
            sakt_marqdena: SaktChoice::Waqf,
            sakt_man_raq: SaktChoice::Sakt,
            sakt_bal_ran: SaktChoice::Sakt,
            sakt_maleeyah: SaktOrIdgham::Waqf,
            between_anfal_and_tawba: AnfalTawba::Waqf,
            noon_and_yaseen: IzharOrIdgham::Izhar,
            yaa_ataan: YaaAtaan::Wasl,
            start_with_ism: StartWithIsm::Wasl,
            yabsut: SeenOrSaad::Seen,
            bastah: SeenOrSaad::Seen,
            almusaytirun: SeenOrSaad::Saad,
            bimusaytir: SeenOrSaad::Saad,
            tasheel_or_madd: TasheelOrMadd::Madd,
            yalhath_dhalik: IdghamChoice::Idgham,
            irkab_maana: IdghamChoice::Idgham,
            noon_tamna: NoonTamna::Ishmam,
            harakat_daaf: HarakatDaaf::Fath,
            alif_salasila: AlifSalasila::Wasl,
            idgham_nakhluqkum: IdghamKind::Kamil,
            raa_firq: RaaChoice::Tafkheem,
            raa_alqitr: RaaWaslChoice::Wasl,
            raa_misr: RaaWaslChoice::Wasl,
            raa_nudhur: RaaWaslChoice::Tafkheem,
            raa_yasr: RaaWaslChoice::Tarqeeq,
            meem_mokhfah: MeemMokhfahChoice::Ikhfaa,
        }
    }

    /// The profile used throughout the test suite: monfasel 4, mottasel 5
    /// (5 at pause), aared 4, everything else at its documented default.
    pub fn standard() -> Self {
        Self::with_required(4, 5, 5, 4)
    }

    /// Renders the configuration in the `key = value` file format, fields in
    /// canonical order. `parse_attributes(render(x)) == x` for valid `x`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for key in FIELD_NAMES {
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&self.get(key).expect("registered field"));
            out.push('\n');
        }
        out
    }

    /// Stable 64-bit FNV-1a hash of the rendered configuration.
    pub fn fingerprint(&self) -> u64 {
        let mut hash: u64 = 0xcbf29ce484222325;
        for b in self.render().bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash
    }

    /// Reads one field as its configuration-file string.
    pub fn get(&self, key: &str) -> Option<String> {
        let v = match key {
            "rewaya" => self.rewaya.to_string(),
            "recitation_speed" => self.recitation_speed.to_string(),
            "takbeer" => self.takbeer.to_string(),
            "madd_monfasel_len" => self.madd_monfasel_len.to_string(),
            "madd_mottasel_len" => self.madd_mottasel_len.to_string(),
            "madd_mottasel_waqf" => self.madd_mottasel_waqf.to_string(),
            "madd_aared_len" => self.madd_aared_len.to_string(),
            "madd_alleen_len" => self.madd_alleen_len.to_string(),
            "madd_yaa_alayn_alharfy" => self.madd_yaa_alayn_alharfy.to_string(),
            "ghonna_lam_and_raa" => self.ghonna_lam_and_raa.to_string(),
            "meem_aal_imran" => self.meem_aal_imran.to_string(),
            "saken_before_hamz" => self.saken_before_hamz.to_string(),
            "sakt_iwaja" => self.sakt_iwaja.to_string(),
            "sakt_marqdena" => self.sakt_marqdena.to_string(),
            "sakt_man_raq" => self.sakt_man_raq.to_string(),
            "sakt_bal_ran" => self.sakt_bal_ran.to_string(),
            "sakt_maleeyah" => self.sakt_maleeyah.to_string(),
            "between_anfal_and_tawba" => self.between_anfal_and_tawba.to_string(),
            "noon_and_yaseen" => self.noon_and_yaseen.to_string(),
            "yaa_ataan" => self.yaa_ataan.to_string(),
            "start_with_ism" => self.start_with_ism.to_string(),
            "yabsut" => self.yabsut.to_string(),
            "bastah" => self.bastah.to_string(),
            "almusaytirun" => self.almusaytirun.to_string(),
            "bimusaytir" => self.bimusaytir.to_string(),
            "tasheel_or_madd" => self.tasheel_or_madd.to_string(),
            "yalhath_dhalik" => self.yalhath_dhalik.to_string(),
            "irkab_maana" => self.irkab_maana.to_string(),
            "noon_tamna" => self.noon_tamna.to_string(),
            "harakat_daaf" => self.harakat_daaf.to_string(),
            "alif_salasila" => self.alif_salasila.to_string(),
            "idgham_nakhluqkum" => self.idgham_nakhluqkum.to_string(),
            "raa_firq" => self.raa_firq.to_string(),
            "raa_alqitr" => self.raa_alqitr.to_string(),
            "raa_misr" => self.raa_misr.to_string(),
            "raa_nudhur" => self.raa_nudhur.to_string(),
            "raa_yasr" => self.raa_yasr.to_string(),
            "meem_mokhfah" => self.meem_mokhfah.to_string(),
            _ => return None,
        };
        Some(v)
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        fn bad(key: &str, value: &str, allowed: &[&str], line: usize) -> Error {
            Error::Config(format!(
                "line {line}: illegal value `{value}` for `{key}` (allowed: {})",
                allowed.join(", ")
            ))
        }
        fn int(key: &str, value: &str, set: &[u8], line: usize) -> Result<u8> {
            let n: u8 = value.parse().map_err(|_| {
                Error::Config(format!("line {line}: `{key}` expects an integer, got `{value}`"))
            })?;
            if !set.contains(&n) {
                let allowed: Vec<String> = set.iter().map(u8::to_string).collect();
                return Err(Error::Config(format!(
                    "line {line}: illegal value `{value}` for `{key}` (allowed: {})",
                    allowed.join(", ")
                )));
            }
            Ok(n)
        }
        macro_rules! parse_enum {
            ($field:ident, $ty:ty) => {
                self.$field =
                    <$ty>::parse(value).ok_or_else(|| bad(key, value, <$ty>::VALUES, line))?
            };
        }
        match key {
            "rewaya" => parse_enum!(rewaya, Rewaya),
            "recitation_speed" => parse_enum!(recitation_speed, RecitationSpeed),
            "takbeer" => parse_enum!(takbeer, Takbeer),
            "madd_monfasel_len" => self.madd_monfasel_len = int(key, value, MONFASEL_SET, line)?,
            "madd_mottasel_len" => self.madd_mottasel_len = int(key, value, MOTTASEL_SET, line)?,
            "madd_mottasel_waqf" => self.madd_mottasel_waqf = int(key, value, MOTTASEL_SET, line)?,
            "madd_aared_len" => self.madd_aared_len = int(key, value, AARED_SET, line)?,
            "madd_alleen_len" => self.madd_alleen_len = int(key, value, AARED_SET, line)?,
            "madd_yaa_alayn_alharfy" => {
                self.madd_yaa_alayn_alharfy = int(key, value, AARED_SET, line)?
            }
            "ghonna_lam_and_raa" => parse_enum!(ghonna_lam_and_raa, GhonnaLamRaa),
            "meem_aal_imran" => parse_enum!(meem_aal_imran, MeemAalImran),
            "saken_before_hamz" => parse_enum!(saken_before_hamz, SakenBeforeHamz),
            "sakt_iwaja" => parse_enum!(sakt_iwaja, SaktChoice),
            "sakt_marqdena" => parse_enum!(sakt_marqdena, SaktChoice),
            "sakt_man_raq" => parse_enum!(sakt_man_raq, SaktChoice),
            "sakt_bal_ran" => parse_enum!(sakt_bal_ran, SaktChoice),
            "sakt_maleeyah" => parse_enum!(sakt_maleeyah, SaktOrIdgham),
            "between_anfal_and_tawba" => parse_enum!(between_anfal_and_tawba, AnfalTawba),
            "noon_and_yaseen" => parse_enum!(noon_and_yaseen, IzharOrIdgham),
            "yaa_ataan" => parse_enum!(yaa_ataan, YaaAtaan),
            "start_with_ism" => parse_enum!(start_with_ism, StartWithIsm),
            "yabsut" => parse_enum!(yabsut, SeenOrSaad),
            "bastah" => parse_enum!(bastah, SeenOrSaad),
            "almusaytirun" => parse_enum!(almusaytirun, SeenOrSaad),
            "bimusaytir" => parse_enum!(bimusaytir, SeenOrSaad),
            "tasheel_or_madd" => parse_enum!(tasheel_or_madd, TasheelOrMadd),
            "yalhath_dhalik" => parse_enum!(yalhath_dhalik, IdghamChoice),
            "irkab_maana" => parse_enum!(irkab_maana, IdghamChoice),
            "noon_tamna" => parse_enum!(noon_tamna, NoonTamna),
            "harakat_daaf" => parse_enum!(harakat_daaf, HarakatDaaf),
            "alif_salasila" => parse_enum!(alif_salasila, AlifSalasila),
            "idgham_nakhluqkum" => parse_enum!(idgham_nakhluqkum, IdghamKind),
            "raa_firq" => parse_enum!(raa_firq, RaaChoice),
            "raa_alqitr" => parse_enum!(raa_alqitr, RaaWaslChoice),
            "raa_misr" => parse_enum!(raa_misr, RaaWaslChoice),
            "raa_nudhur" => parse_enum!(raa_nudhur, RaaWaslChoice),
            "raa_yasr" => parse_enum!(raa_yasr, RaaWaslChoice),
            "meem_mokhfah" => parse_enum!(meem_mokhfah, MeemMokhfahChoice),
            other => {
                return Err(Error::Config(format!("line {line}: unknown key `{other}`")))
            }
        }
        Ok(())
    }
}

/// Builds a configuration from a key/value map holding at least the four
/// required fields; every unnamed field takes its documented default.
pub fn default_attributes(required: &BTreeMap<String, String>) -> Result<MoshafAttributes> {
    for field in REQUIRED_FIELDS {
        if !required.contains_key(*field) {
            return Err(Error::Config(format!("{field} required")));
        }
    }
    let mut attrs = MoshafAttributes::with_required(0, 0, 0, 0);
    let mut alleen_given = false;
    for (key, value) in required {
        if !FIELD_NAMES.contains(&key.as_str()) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        if key == "madd_alleen_len" {
            alleen_given = true;
        }
        attrs.set(key, value, 0)?;
    }
    if !alleen_given {
        attrs.madd_alleen_len = attrs.madd_aared_len;
    }
    Ok(attrs)
}

/// Parses the `key = value` configuration document format.
///
/// Unknown keys, illegal values and duplicate keys are rejected with the key
/// name and line; the four required madd lengths must be present.
pub fn parse_attributes(text: &str) -> Result<MoshafAttributes> {
    let mut attrs = MoshafAttributes::with_required(0, 0, 0, 0);
    let mut seen: Vec<&str> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split('#').next() {
            Some(l) => l.trim(),
            None => "",
        };
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {line_no}: expected `key = value`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !FIELD_NAMES.contains(&key) {
            return Err(Error::Config(format!("line {line_no}: unknown key `{key}`")));
        }
        if seen.contains(&key) {
            return Err(Error::Config(format!("line {line_no}: duplicate key `{key}`")));
        }
        attrs.set(key, value, line_no)?;
        seen.push(FIELD_NAMES.iter().find(|f| **f == key).unwrap());
    }
    for field in REQUIRED_FIELDS {
        if !seen.contains(field) {
            return Err(Error::Config(format!("{field} required")));
        }
    }
    if !seen.contains(&"madd_alleen_len") {
        attrs.madd_alleen_len = attrs.madd_aared_len;
    }
    Ok(attrs)
}

/// Checks cross-field invariants, reporting every violation rather than the
/// first. Monfasel lengths 3 and 6 are accepted but flagged, since published
/// Hafs sources disagree on them.
pub fn validate_attributes(attrs: &MoshafAttributes) -> ValidationReport {
    let mut report = ValidationReport::default();
    if attrs.madd_alleen_len > attrs.madd_aared_len {
        report.violations.push(format!(
            "madd_alleen_len > madd_aared_len ({} > {})",
            attrs.madd_alleen_len, attrs.madd_aared_len
        ));
    }
    for (name, value, set) in [
        ("madd_monfasel_len", attrs.madd_monfasel_len, MONFASEL_SET),
        ("madd_mottasel_len", attrs.madd_mottasel_len, MOTTASEL_SET),
        ("madd_mottasel_waqf", attrs.madd_mottasel_waqf, MOTTASEL_SET),
        ("madd_aared_len", attrs.madd_aared_len, AARED_SET),
        ("madd_alleen_len", attrs.madd_alleen_len, AARED_SET),
        ("madd_yaa_alayn_alharfy", attrs.madd_yaa_alayn_alharfy, AARED_SET),
    ] {
        if !set.contains(&value) {
            let allowed: Vec<String> = set.iter().map(u8::to_string).collect();
            report
                .violations
                .push(format!("{name} = {value} not in {{{}}}", allowed.join(", ")));
        }
    }
    if matches!(attrs.madd_monfasel_len, 3 | 6) {
        report.warnings.push(format!(
            "madd_monfasel_len = {}: sources disagree on this length for Hafs",
            attrs.madd_monfasel_len
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_table() {
        let attrs = MoshafAttributes::with_required(4, 5, 5, 4);
        assert_eq!(attrs.madd_alleen_len, 4);
        assert_eq!(attrs.sakt_man_raq, SaktChoice::Sakt);
        assert_eq!(attrs.sakt_bal_ran, SaktChoice::Sakt);
        assert_eq!(attrs.sakt_iwaja, SaktChoice::Waqf);
        assert_eq!(attrs.madd_yaa_alayn_alharfy, 6);
        assert_eq!(attrs.raa_yasr, RaaWaslChoice::Tarqeeq);
        assert_eq!(attrs.meem_mokhfah, MeemMokhfahChoice::Ikhfaa);
    }

    #[test]
    fn default_attributes_requires_all_four() {
        let mut req = BTreeMap::new();
        req.insert("madd_monfasel_len".into(), "4".into());
        req.insert("madd_mottasel_len".into(), "5".into());
        req.insert("madd_aared_len".into(), "4".into());
        let err = default_attributes(&req).unwrap_err();
        assert!(err.to_string().contains("madd_mottasel_waqf required"));

        req.insert("madd_mottasel_waqf".into(), "5".into());
        let attrs = default_attributes(&req).unwrap();
        assert_eq!(attrs.madd_alleen_len, 4);
    }

    #[test]
    fn alleen_copies_aared() {
        let mut req = BTreeMap::new();
        for (k, v) in [
            ("madd_monfasel_len", "2"),
            ("madd_mottasel_len", "4"),
            ("madd_mottasel_waqf", "4"),
            ("madd_aared_len", "6"),
        ] {
            req.insert(k.to_string(), v.to_string());
        }
        assert_eq!(default_attributes(&req).unwrap().madd_alleen_len, 6);
    }

    #[test]
    fn parse_happy_path_and_round_trip() {
        let attrs = MoshafAttributes::standard();
        let rendered = attrs.render();
        let reparsed = parse_attributes(&rendered).unwrap();
        assert_eq!(attrs, reparsed);
    }

    #[test]
    fn parse_bundled_default_config() {
        let attrs = parse_attributes(include_str!("../data/hafs-default.cfg")).unwrap();
        assert_eq!(attrs, MoshafAttributes::standard());
    }

    #[test]
    fn parse_rejects_bad_values() {
        let err = parse_attributes("madd_aared_len = 3\n").unwrap_err();
        assert!(err.to_string().contains("madd_aared_len"), "{err}");

        let doc = "rewaya = hafs\nrewaya = hafs\n";
        let err = parse_attributes(doc).unwrap_err();
        assert!(err.to_string().contains("duplicate key `rewaya`"), "{err}");

        let err = parse_attributes("no_such_key = 1\n").unwrap_err();
        assert!(err.to_string().contains("unknown key"), "{err}");
    }

    #[test]
    fn validate_reports_all_violations() {
        let mut attrs = MoshafAttributes::with_required(4, 5, 5, 2);
        attrs.madd_alleen_len = 6; // > aared
        attrs.madd_mottasel_len = 7; // outside {4,5,6}
        let report = validate_attributes(&attrs);
        assert!(!report.ok());
        assert_eq!(report.violations.len(), 2);
        assert!(report.violations[0].contains("madd_alleen_len > madd_aared_len"));
    }

    #[test]
    fn validate_flags_contested_monfasel() {
        let attrs = MoshafAttributes::with_required(6, 5, 5, 4);
        let report = validate_attributes(&attrs);
        assert!(report.ok());
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn render_covers_every_field_exactly_once() {
        let attrs = MoshafAttributes::standard();
        let rendered = attrs.render();
        for field in FIELD_NAMES {
            assert_eq!(
                rendered.lines().filter(|l| l.starts_with(&format!("{field} ="))).count(),
                1,
                "{field}"
            );
        }
        assert_eq!(rendered.lines().count(), FIELD_NAMES.len());
    }

    #[test]
    fn exhaustive_enum_round_trip() {
        // every enum value survives a render/parse cycle in some config
        let mut attrs = MoshafAttributes::standard();
        for value in SaktChoice::VALUES {
            attrs.sakt_iwaja = SaktChoice::parse(value).unwrap();
            let reparsed = parse_attributes(&attrs.render()).unwrap();
            assert_eq!(attrs, reparsed);
        }
        for value in RaaWaslChoice::VALUES {
            attrs.raa_misr = RaaWaslChoice::parse(value).unwrap();
            let reparsed = parse_attributes(&attrs.render()).unwrap();
            assert_eq!(attrs, reparsed);
        }
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = MoshafAttributes::standard();
        let mut b = a.clone();
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.madd_monfasel_len = 5;
        assert_ne!(a.fingerprint(), b.fingerprint());
    }
}
