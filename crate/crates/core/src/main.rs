use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use diphone_tts::audio::{read_wav, write_wav};
use diphone_tts::bank::{fixture_bank, DiphoneBank};
use diphone_tts::config::{Config, Layer};
use diphone_tts::eval::{answer_key, score_files, score_sheet, Corpora, CorpusKind};
use diphone_tts::extract::{
    calibrate_silence, extract_persistent_diphone, extract_stop_diphone, section_monophone,
    spectral_profile, DiphoneCut, MonophoneRecord, SilenceProfile,
};
use diphone_tts::g2p::{dictionary_words, evaluate, GraphoneTable};
use diphone_tts::lexicon::{PosLexicon, PronunciationLexicon};
use diphone_tts::phoneset::Phone;
use diphone_tts::postagger::{evaluate_brown, Tagger, TrigramModel};
use diphone_tts::prosody::ProsodySettings;
use diphone_tts::server::{self, AppState};
use diphone_tts::signal::{detect_pulses, shift_diphone, split_point, ShiftPath, ShiftSpec, DEFAULT_SMOOTHING_MS};
use diphone_tts::synth::{phone_string, Engine, Resources};
use diphone_tts::{Error, Result};

#[derive(Parser)]
#[command(name = "tts", version, about = "Diphone text-to-speech and voice-building tools")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// TOML file with any of: data, bank, settings, port, seed, log_level.
    #[arg(long, global = true, env = "TTS_CONFIG")]
    config: Option<PathBuf>,
    /// Resource directory (lexicon/, g2p/, pos/, prosody/, corpora/).
    #[arg(long, global = true, env = "TTS_DATA")]
    data: Option<PathBuf>,
    /// Bank directory, or "fixture" for the built-in synthetic bank.
    #[arg(long, global = true, env = "TTS_BANK")]
    bank: Option<PathBuf>,
    /// Prosody settings TOML.
    #[arg(long, global = true, env = "TTS_SETTINGS")]
    settings: Option<PathBuf>,
    #[arg(long, global = true, env = "TTS_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true, env = "TTS_LOG_LEVEL")]
    log_level: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Train a graphone table from a CMUdict-format dictionary.
    TrainG2p {
        dict: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pronounce words with the graphone table.
    G2p {
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Accuracy of the graphone table against a dictionary.
    EvalG2p {
        #[arg(long)]
        dict: Option<PathBuf>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Build the tag trigram model from `count<TAB>words<TAB>claws7 tags` rows.
    BuildTagger {
        rows: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Minimum count for a word trigram to become an override.
        #[arg(long, default_value_t = 2)]
        min_override: u64,
    },
    /// Tag a sentence.
    Tag {
        text: String,
        #[arg(long)]
        no_overrides: bool,
    },
    /// Tagging accuracy on Brown-format `word/TAG` text.
    EvalTagger {
        #[arg(long)]
        brown: Option<PathBuf>,
    },
    /// Silence thresholds from a recording of the room.
    Calibrate { silence: PathBuf },
    /// Section a held-phone recording into onset, sustain and offset.
    ExtractMono {
        wav: PathBuf,
        phone: Phone,
        #[arg(long)]
        silence: PathBuf,
        /// Directory for onset/sustain/offset clips.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cut the transition out of a two-phone recording.
    ExtractDi {
        wav: PathBuf,
        p1: Phone,
        p2: Phone,
        #[arg(long)]
        silence: PathBuf,
        /// Held recording of P1; not needed when P1 is a stop.
        #[arg(long)]
        p1_sustain: Option<PathBuf>,
        /// Held recording of P2.
        #[arg(long)]
        p2_sustain: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a bank from a directory of `P.wav` and `P1-P2.wav` recordings.
    BuildBank {
        recordings: PathBuf,
        #[arg(long)]
        silence: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Report missing clips; exits 2 when the bank is incomplete.
    BankCheck { dir: PathBuf },
    /// Write the built-in synthetic bank to a directory.
    MakeFixtureBank {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Synthesize text to a WAV file.
    Say {
        text: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the synthesis report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write the token, prosody and clip plan as JSON.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Print the token, tag and pronunciation table.
    Preprocess { text: String },
    /// Run the HTTP service.
    Serve {
        #[arg(long, env = "TTS_PORT")]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
    /// Write the default (or neutral) prosody settings as TOML.
    DefaultSettings {
        #[arg(long)]
        neutral: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize an intelligibility test with its answer key.
    GenTest {
        #[arg(long)]
        kind: CorpusKind,
        #[arg(long)]
        list: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Score listener transcripts against an answer key.
    Score {
        #[arg(long = "ref")]
        key: PathBuf,
        #[arg(long)]
        hyp: PathBuf,
    },
    /// Shift one clip and report pulses before and after.
    ShiftDemo {
        clip: PathBuf,
        #[arg(long, default_value = "AA")]
        p1: Phone,
        #[arg(long, default_value = "AA")]
        p2: Phone,
        /// Start and end pitch ratio, `a,b` or a single value.
        #[arg(long, value_parser = parse_pair, default_value = "1")]
        pitch: (f64, f64),
        #[arg(long, value_parser = parse_pair, default_value = "1")]
        dur: (f64, f64),
        #[arg(long, value_parser = parse_pair, default_value = "1")]
        volume: (f64, f64),
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the MOS-X rating form.
    MosxForm,
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v[..] {
        [a] if a > 0.0 => Ok((a, a)),
        [a, b] if a > 0.0 && b > 0.0 => Ok((a, b)),
        _ => Err("expected one or two positive numbers".into()),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn load_lexicon(path: &Path) -> Result<PronunciationLexicon> {
    PronunciationLexicon::load_cmudict(open(path)?, &path.display().to_string())
}

fn load_table(path: &Path) -> Result<GraphoneTable> {
    GraphoneTable::load_tsv(open(path)?, &path.display().to_string())
}

fn settings(cfg: &Config) -> Result<ProsodySettings> {
    let mut s = match &cfg.settings {
        Some(p) => ProsodySettings::load(p)?,
        None => ProsodySettings::default(),
    };
    if let Some(seed) = cfg.seed {
        s.seed = seed;
    }
    Ok(s)
}

fn bank(cfg: &Config) -> Result<DiphoneBank> {
    match &cfg.bank {
        Some(dir) => DiphoneBank::load(dir),
        None => {
            log::info!("no bank given; using the built-in fixture bank");
            Ok(fixture_bank())
        }
    }
}

fn engine(cfg: &Config) -> Result<Engine> {
    cfg.check_paths(true, true)?;
    Ok(Engine::new(Resources::load(&cfg.data)?, bank(cfg)?))
}

fn profile(silence: &Path) -> Result<SilenceProfile> {
    calibrate_silence(&read_wav(silence)?)
}

/// Spectral profile of the sustained part of a held-phone recording.
fn sustain_profile(path: &Path, phone: Phone, prof: &SilenceProfile) -> Result<Vec<f64>> {
    let rec = section_monophone(&read_wav(path)?, phone, prof)?;
    Ok(spectral_profile(rec.sustain()))
}

fn print_cut(cut: &DiphoneCut) {
    println!("{}-{}\tstart {}\tboundary {}\tend {}", cut.p1, cut.p2, cut.start, cut.boundary, cut.end);
}

fn build_bank(recordings: &Path, silence: &Path, output: &Path, name: Option<String>) -> Result<()> {
    let prof = profile(silence)?;
    let mut monos: BTreeMap<Phone, (String, Vec<f64>)> = BTreeMap::new();
    let mut pairs: Vec<(Phone, Phone, String, PathBuf)> = Vec::new();
    let entries = std::fs::read_dir(recordings).map_err(|e| Error::io(recordings, e))?;
    let mut files: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
    files.sort();
    for f in files {
        if f.extension().and_then(|e| e.to_str()) != Some("wav") {
            continue;
        }
        let stem = f.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let label = f.file_name().unwrap_or_default().to_string_lossy().into_owned();
        match stem.split_once('-') {
            None => {
                let p: Phone = stem.parse()?;
                monos.insert(p, (label, read_wav(&f)?));
            }
            Some((a, b)) => pairs.push((a.parse()?, b.parse()?, label, f)),
        }
    }
    let mut records: Vec<(String, MonophoneRecord)> = Vec::new();
    let mut spectra: BTreeMap<Phone, Vec<f64>> = BTreeMap::new();
    for (p, (label, x)) in &monos {
        match section_monophone(x, *p, &prof) {
            Ok(rec) => {
                if !p.is_stop() {
                    spectra.insert(*p, spectral_profile(rec.sustain()));
                }
                records.push((label.clone(), rec));
            }
            Err(e) => log::warn!("{label}: {e}"),
        }
    }
    let mut sources: Vec<(String, DiphoneCut, Vec<f64>)> = Vec::new();
    for (p1, p2, label, path) in pairs {
        let Some(s2) = spectra.get(&p2) else {
            log::warn!("{label}: no held recording of {p2}; skipped");
            continue;
        };
        let x = read_wav(&path)?;
        let cut = if p1.is_stop() {
            extract_stop_diphone(&x, p1, p2, &prof, s2)
        } else if let Some(s1) = spectra.get(&p1) {
            extract_persistent_diphone(&x, p1, p2, &prof, s1, s2)
        } else {
            log::warn!("{label}: no held recording of {p1}; skipped");
            continue;
        };
        match cut {
            Ok(c) => sources.push((label, c, x)),
            Err(e) => log::warn!("{label}: {e}"),
        }
    }
    let cuts: Vec<(String, DiphoneCut, &[f64])> =
        sources.iter().map(|(l, c, x)| (l.clone(), c.clone(), x.as_slice())).collect();
    let name = name.unwrap_or_else(|| {
        output.file_name().map_or("bank".into(), |n| n.to_string_lossy().into_owned())
    });
    let (bank, report) = DiphoneBank::assemble(&name, &records, &cuts);
    bank.save(output)?;
    println!(
        "{}: {} diphones, {} monophones",
        output.display(),
        bank.diphones.len(),
        bank.monophones.len()
    );
    print_completeness(&report);
    Ok(())
}

fn print_completeness(report: &diphone_tts::bank::CompletenessReport) {
    for (a, b) in &report.missing_diphones {
        println!("missing diphone\t{a} {b}");
    }
    for p in &report.missing_stop_monophones {
        println!("missing monophone\t{p}");
    }
}

fn gen_test(engine: &Engine, settings: &ProsodySettings, corpora: &Corpora, kind: CorpusKind, list: Option<usize>, out: &Path) -> Result<()> {
    let prompts = corpora.prompts(kind, list, settings.seed)?;
    create_dir(out)?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = prompts.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = prompts
            .chunks(chunk)
            .map(|ps| {
                s.spawn(move || -> Result<()> {
                    for p in ps {
                        let syn = engine.synthesize(&p.text, settings);
                        write_wav(&out.join(format!("{}.wav", p.id)), &syn.samples)?;
                    }
                    Ok(())
                })
            })
            .collect();
        handles
            .into_iter()
            .try_for_each(|h| h.join().expect("synthesis worker panicked"))
    })?;
    write_text(&out.join("answer_key.tsv"), &answer_key(&prompts))?;
    write_text(&out.join("score_sheet.tsv"), &score_sheet(&prompts))?;
    println!("{}: {} prompts", out.display(), prompts.len());
    Ok(())
}

fn shift_demo(clip: &Path, p1: Phone, p2: Phone, spec: ShiftSpec, out: &Path) -> Result<()> {
    let x = read_wav(clip)?;
    let y = shift_diphone(&x, p1, p2, &spec, DEFAULT_SMOOTHING_MS);
    create_dir(out)?;
    write_wav(&out.join("before.wav"), &x)?;
    write_wav(&out.join("after.wav"), &y)?;
    let pulses = |v: &[f64]| detect_pulses(v, DEFAULT_SMOOTHING_MS).unwrap_or_default();
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let (pb, pa) = (pulses(&x), pulses(&y));
    let mut r = String::new();
    r.push_str(&format!("path\t{:?}\n", ShiftPath::for_pair(p1, p2)));
    r.push_str(&format!("spec\t{}\n", serde_json::to_string(&spec).expect("spec serializes")));
    r.push_str(&format!("samples_before\t{}\nsamples_after\t{}\n", x.len(), y.len()));
    if let Some(cut) = split_point(&pb, x.len()) {
        r.push_str(&format!("split\t{cut}\n"));
    }
    r.push_str(&format!("pulses_before\t{}\npulses_after\t{}\n", list(&pb), list(&pa)));
    write_text(&out.join("report.txt"), &r)?;
    print!("{r}");
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let g = cli.global;
    let layer = Layer {
        data: g.data,
        bank: g.bank,
        settings: g.settings,
        port: match &cli.command {
            Command::Serve { port, .. } => *port,
            _ => None,
        },
        seed: g.seed,
        log_level: g.log_level,
    };
    let cfg = Config::resolve(layer, g.config.as_deref())?;
    env_logger::Builder::new().parse_filters(&cfg.log_level).init();

    match cli.command {
        Command::TrainG2p { dict, output } => {
            let lex = load_lexicon(&dict)?;
            let (table, report) = GraphoneTable::train_from_dictionary(&dictionary_words(&lex))?;
            write_text(&output, &table.to_tsv())?;
            let a = &report.alignment;
            println!(
                "{} words: {} aligned directly, {} by splitting, {} dropped; {} keys, {} pruned",
                a.words, a.first_pass, a.second_pass, a.dropped, report.keys, report.pruned
            );
        }
        Command::G2p { words, table } => {
            let path = table.unwrap_or_else(|| cfg.data.join("g2p/graphones.tsv"));
            let table = load_table(&path)?;
            for w in words {
                let d = table.decode(&w);
                println!("{w}\t{}", d.phonemes.join(" "));
                if !d.silent_letters.is_empty() {
                    log::warn!("{w}: no graphone for {:?}", d.silent_letters);
                }
            }
        }
        Command::EvalG2p { dict, table } => {
            let dict = dict.unwrap_or_else(|| cfg.data.join("lexicon/cmudict.dict"));
            let table = load_table(&table.unwrap_or_else(|| cfg.data.join("g2p/graphones.tsv")))?;
            let acc = evaluate(&table, &dictionary_words(&load_lexicon(&dict)?));
            print!("{acc}");
            println!("Exact+minor\t{}\t{:.2}", acc.exact + acc.minor(), acc.pct(acc.exact + acc.minor()));
        }
        Command::BuildTagger { rows, output, min_override } => {
            let (model, r) = TrigramModel::build(open(&rows)?, &rows.display().to_string(), min_override)?;
            write_text(&output, &model.to_tsv())?;
            println!(
                "{} rows, {} malformed, {} outside the tag set, {} overrides",
                r.rows, r.malformed, r.unmodelled, r.overrides
            );
        }
        Command::Tag { text, no_overrides } => {
            let tagger = load_tagger(&cfg.data)?;
            for sentence in sentences(&text) {
                let words: Vec<&str> = sentence.iter().map(String::as_str).collect();
                let tags = tagger.tag_words(&words, !no_overrides);
                let row: Vec<String> = words.iter().zip(tags).map(|(w, t)| format!("{w}/{t}")).collect();
                println!("{}", row.join(" "));
            }
        }
        Command::EvalTagger { brown } => {
            let tagger = load_tagger(&cfg.data)?;
            let path = brown.unwrap_or_else(|| cfg.data.join("pos/heldout_brown.txt"));
            let acc = evaluate_brown(&tagger, &read_text(&path)?);
            println!("words\t{}", acc.words);
            println!("model\t{:.2}", acc.base_pct());
            println!("model+overrides\t{:.2}", acc.override_pct());
        }
        Command::Calibrate { silence } => {
            let p = profile(&silence)?;
            println!("amplitude_threshold\t{:.9}", p.amplitude_threshold);
            println!("rms_threshold\t{:.9}", p.rms_threshold);
        }
        Command::ExtractMono { wav, phone, silence, output } => {
            let rec = section_monophone(&read_wav(&wav)?, phone, &profile(&silence)?)?;
            println!(
                "{phone}\tsource_start {}\tonset_end {}\toffset_start {}\tlength {}",
                rec.source_start,
                rec.onset_end,
                rec.offset_start,
                rec.clip.len()
            );
            if let Some(dir) = output {
                create_dir(&dir)?;
                write_wav(&dir.join(format!("X-{phone}.wav")), rec.onset())?;
                write_wav(&dir.join(format!("{phone}.wav")), rec.sustain())?;
                write_wav(&dir.join(format!("{phone}-X.wav")), rec.offset())?;
            }
        }
        Command::ExtractDi { wav, p1, p2, silence, p1_sustain, p2_sustain, output } => {
            let prof = profile(&silence)?;
            let x = read_wav(&wav)?;
            let s2 = sustain_profile(&p2_sustain, p2, &prof)?;
            let cut = if p1.is_stop() {
                extract_stop_diphone(&x, p1, p2, &prof, &s2)?
            } else {
                let path = p1_sustain
                    .ok_or_else(|| Error::Usage(format!("--p1-sustain is needed for {p1}")))?;
                let s1 = sustain_profile(&path, p1, &prof)?;
                extract_persistent_diphone(&x, p1, p2, &prof, &s1, &s2)?
            };
            print_cut(&cut);
            if let Some(out) = output {
                write_wav(&out, cut.clip(&x))?;
            }
        }
        Command::BuildBank { recordings, silence, output, name } => {
            build_bank(&recordings, &silence, &output, name)?;
        }
        Command::BankCheck { dir } => {
            if !dir.is_dir() {
                return Err(Error::Data(format!("bank {} not found", dir.display())));
            }
            let bank = DiphoneBank::load(&dir)?;
            let report = bank.completeness();
            println!("{}: {} diphones, {} monophones", bank.name, bank.diphones.len(), bank.monophones.len());
            print_completeness(&report);
            if !report.is_complete() {
                return Err(Error::Data("bank is incomplete".into()));
            }
        }
        Command::MakeFixtureBank { output } => {
            fixture_bank().save(&output)?;
            println!("{}", output.display());
        }
        Command::Say { text, output, report, plan } => {
            let engine = engine(&cfg)?;
            let settings = settings(&cfg)?;
            if let Some(p) = plan {
                write_text(&p, &to_json(&engine.utterance(&text, &settings)))?;
            }
            let syn = engine.synthesize(&text, &settings);
            write_wav(&output, &syn.samples)?;
            let r = &syn.report;
            println!(
                "{}: {:.3} s, {} clips, {} substitutions, rtf {:.4}",
                output.display(),
                r.audio_seconds,
                r.clips,
                r.substitutions.len(),
                r.real_time_factor
            );
            if let Some(p) = report {
                write_text(&p, &to_json(r))?;
            }
        }
        Command::Preprocess { text } => {
            let resources = {
                cfg.check_paths(true, false)?;
                Resources::load(&cfg.data)?
            };
            let tokens = resources.preprocess(&text, &settings(&cfg)?);
            println!("token\ttag\tpronunciation\tsource");
            for t in tokens {
                let tag = t.tag.map(|g| g.to_string()).unwrap_or_default();
                let pron = if t.phones.is_empty() { String::new() } else { phone_string(&t.phones) };
                let source = serde_json::to_value(t.source).expect("source serializes");
                println!("{}\t{tag}\t{pron}\t{}", t.text, source.as_str().unwrap_or_default());
            }
        }
        Command::Serve { host, .. } => {
            let state = AppState::new(engine(&cfg)?, settings(&cfg)?);
            let addr = format!("{host}:{}", cfg.port)
                .parse()
                .map_err(|e| Error::Usage(format!("address {host}:{}: {e}", cfg.port)))?;
            let rt = tokio::runtime::Runtime::new().map_err(|e| Error::io("tokio runtime", e))?;
            rt.block_on(server::serve(state, addr))?;
        }
        Command::DefaultSettings { neutral, output } => {
            let s = if neutral { ProsodySettings::neutral() } else { ProsodySettings::default() };
            match output {
                Some(p) => write_text(&p, &s.to_toml())?,
                None => print!("{}", s.to_toml()),
            }
        }
        Command::GenTest { kind, list, output } => {
            let corpora = Corpora::load(&cfg.data.join("corpora"))?;
            let engine = engine(&cfg)?;
            let mut s = settings(&cfg)?;
            s.seed = cfg.seed.unwrap_or(s.seed);
            gen_test(&engine, &s, &corpora, kind, list, &output)?;
        }
        Command::Score { key, hyp } => {
            let s = score_files(&read_text(&key)?, &read_text(&hyp)?);
            for (id, c, t) in &s.items {
                println!("{id}\t{c}/{t}");
            }
            for id in &s.unanswered {
                log::warn!("{id}: no transcript");
            }
            println!("total\t{}/{}\t{:.2}%", s.correct, s.total, s.percent());
        }
        Command::ShiftDemo { clip, p1, p2, pitch, dur, volume, output } => {
            let spec = ShiftSpec { pitch, duration: dur, volume };
            shift_demo(&clip, p1, p2, spec, &output)?;
        }
        Command::MosxForm => {
            print!("{}", Corpora::load(&cfg.data.join("corpora"))?.mosx_form());
        }
    }
    Ok(())
}

fn load_tagger(data: &Path) -> Result<Tagger> {
    let m = data.join("pos/model.tsv");
    let model = TrigramModel::load_tsv(open(&m)?, &m.display().to_string())?;
    let l = data.join("lexicon/mpos.txt");
    let mut lexicon = PosLexicon::load_mpos(open(&l)?, &l.display().to_string())?;
    lexicon.dedup_case_variants();
    Ok(Tagger::new(model, lexicon))
}

/// Words of each sentence, punctuation dropped.
fn sentences(text: &str) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    for t in diphone_tts::textnorm::tokenize(text) {
        if t.sentence >= out.len() {
            out.resize(t.sentence + 1, Vec::new());
        }
        if t.kind != diphone_tts::textnorm::TokenKind::Punct {
            out[t.sentence].push(t.text);
        }
    }
    out.retain(|s| !s.is_empty());
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
