//! File formats, fixtures and the survey store.

mod formats;
mod survey;

pub use formats::{
    chartable_to_json, load_cayley, load_chartable, load_perm_group, load_perm_group_marked, load_perm_group_with, save_cayley,
    save_chartable, save_perm_group, CayleyFile, CharTableFile, CyclotomicJson, PermGenerators, PermGroupFile,
    SemidirectSection,
};
pub use survey::{
    append_records, builtin_corpus, quotient_compare, quotient_compare_with, read_records, record_from_table, records_csv,
    single_element_normal_closures, survey, survey_record, QuotientComparison, SurveyInput, SurveyRecord, SurveySummary,
};
