#pragma once

// Sample documents and expected tables from the smart-meter use case.

#include <string>
#include <vector>

namespace fixtures {

inline const std::string kSampleDocument = R"(<MeterReadings>
    <MeterReading>
        <Meter>
            <Names>
                <name>SM000999VG</name>
                <NameType>
                    <description>This is a meter identification number.</description>
                    <name>MeterID</name>
                </NameType>
            </Names>
        </Meter>
        <Readings>
            <timeStamp>2021-03-08T22:22:18Z</timeStamp>
            <value>17.8280</value>
            <ReadingType ref="0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0"/>
        </Readings>
        <Readings>
            <timeStamp>2021-03-08T22:22:18Z</timeStamp>
            <value>17.9735</value>
            <ReadingType ref="0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0"/>
        </Readings>
        <Readings>
            <timeStamp>2021-03-08T22:22:18Z</timeStamp>
            <value>16.3959</value>
            <ReadingType ref="0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0"/>
        </Readings>
    </MeterReading>
</MeterReadings>
)";

// Flattened rows of kSampleDocument under /MeterReadings/MeterReading.
inline const std::vector<std::string> kSampleFlattened = {
    "MeterReadings MeterReading Meter Names name SM000999VG",
    "MeterReadings MeterReading Meter Names NameType description This is a meter identification number.",
    "MeterReadings MeterReading Meter Names NameType name MeterID",
    "MeterReadings MeterReading Readings timeStamp 2021-03-08T22:22:18Z",
    "MeterReadings MeterReading Readings value 17.8280",
    "MeterReadings MeterReading Readings ReadingType ref 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0",
    "MeterReadings MeterReading Readings timeStamp 2021-03-08T22:22:18Z",
    "MeterReadings MeterReading Readings value 17.9735",
    "MeterReadings MeterReading Readings ReadingType ref 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0",
    "MeterReadings MeterReading Readings timeStamp 2021-03-08T22:22:18Z",
    "MeterReadings MeterReading Readings value 16.3959",
    "MeterReadings MeterReading Readings ReadingType ref 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0",
};

// xmldir output for READINGS-SM000000001VG_20210101051308.xml, verbatim.
inline const std::vector<std::string> kFlattenedSample = {
    "MeterReadings MeterReading Meter Names name SM000000001VG",
    "MeterReadings MeterReading Meter Names NameType description This is a meter identification number.",
    "MeterReadings MeterReading Meter Names NameType name MeterID",
    "MeterReadings MeterReading Readings timeStamp 2021-01-01T05:13:08Z",
    "MeterReadings MeterReading Readings value 7.7190",
    "MeterReadings MeterReading Readings ReadingType ref 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0",
    "MeterReadings MeterReading Readings timeStamp 2021-01-01T05:13:08Z",
    "MeterReadings MeterReading Readings value 0.6193",
    "MeterReadings MeterReading Readings ReadingType ref 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0",
    "MeterReadings MeterReading Readings timeStamp 2021-01-01T05:13:08Z",
    "MeterReadings MeterReading Readings value 18.1170",
    "MeterReadings MeterReading Readings ReadingType ref 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0",
};

inline const std::string kMaster =
    "0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0 TYPE01\n"
    "0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0 TYPE02\n"
    "0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 TYPE03\n";

// First rows of a parsed file.
inline const std::vector<std::string> kParsedHead = {
    "SM000000689VG 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 2021-01-01T12:40:06Z 14.8361",
    "SM000000689VG 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0 2021-01-01T12:40:06Z 7.4433",
    "SM000000689VG 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0 2021-01-01T12:40:06Z 6.5668",
    "SM000000145VG 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 2021-01-01T08:54:15Z 19.7668",
    "SM000000145VG 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0 2021-01-01T08:54:15Z 10.1405",
    "SM000000145VG 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0 2021-01-01T08:54:15Z 6.9721",
    "SM000000453VG 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 2021-01-01T06:50:54Z 9.9979",
    "SM000000453VG 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0 2021-01-01T06:50:54Z 19.0457",
    "SM000000453VG 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0 2021-01-01T06:50:54Z 14.0774",
};

// First rows of a validated file.
inline const std::vector<std::string> kValidHead = {
    "SM000000689VG 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 TYPE03 2021-01-01T12:40:06Z 14.8361",
    "SM000000689VG 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0 TYPE02 2021-01-01T12:40:06Z 7.4433",
    "SM000000689VG 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0 TYPE01 2021-01-01T12:40:06Z 6.5668",
    "SM000000145VG 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 TYPE03 2021-01-01T08:54:15Z 19.7668",
    "SM000000145VG 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0 TYPE02 2021-01-01T08:54:15Z 10.1405",
    "SM000000145VG 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0 TYPE01 2021-01-01T08:54:15Z 6.9721",
    "SM000000453VG 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 TYPE03 2021-01-01T06:50:54Z 9.9979",
    "SM000000453VG 0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0 TYPE02 2021-01-01T06:50:54Z 19.0457",
    "SM000000453VG 0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0 TYPE01 2021-01-01T06:50:54Z 14.0774",
    "SM000000223VG 0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0 TYPE03 2021-01-01T03:08:28Z 14.4736",
};

inline std::string join_lines(const std::vector<std::string>& rows) {
    std::string s;
    for (const auto& r : rows) s += r + "\n";
    return s;
}

}  // namespace fixtures
