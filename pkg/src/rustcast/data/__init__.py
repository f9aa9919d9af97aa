from rustcast.data.prep import (
    ClassStats,
    DatasetSplit,
    NormStats,
    apply_norm,
    class_stats,
    fit_norm_stats,
    random_split,
    region_split,
)
from rustcast.data.series import (
    AlignedSeries,
    Example,
    align,
    build_all_windows,
    build_windows,
    flatten_for_fcnn,
    stack,
)
from rustcast.data.tables import (
    N_FEATURES,
    SurveyTable,
    WeatherTable,
    parse_survey_csv,
    parse_weather_csv,
    write_survey_csv,
    write_weather_csv,
)
